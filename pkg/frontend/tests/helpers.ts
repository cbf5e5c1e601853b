import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", `${name}.json`), "utf-8")) as T;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

/**
 * ApiClient backed by the recorded service responses. Saving consumes the
 * preview exactly like the real service: a second save answers 409.
 */
export function recordedClient(): { api: ApiClient; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  let previewPending = false;

  const respond = (status: number, body: unknown): Response =>
    ({
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    }) as unknown as Response;

  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const url = new URL(input, "http://service.test");
    const path = url.pathname + url.search;
    const headers = (init?.headers ?? {}) as Record<string, string>;
    const isJson = headers["content-type"] === "application/json";
    calls.push({
      method,
      path,
      body: init?.body && isJson ? JSON.parse(String(init.body)) : (init?.body ?? null),
    });

    if (method === "POST" && path === "/sessions") {
      return respond(201, fixture("session_created"));
    }
    if (method === "POST" && path.endsWith("/drags")) {
      previewPending = true;
      return respond(200, fixture("preview_drag"));
    }
    if (method === "POST" && path.endsWith("/schemes")) {
      if (!previewPending) {
        return respond(409, { detail: "no pending preview to save" });
      }
      previewPending = false;
      return respond(201, fixture("scheme_saved"));
    }
    if (path.endsWith("/comparison")) {
      return respond(200, fixture("comparison"));
    }
    if (path.includes("/projection")) {
      const scheme = url.searchParams.get("scheme") ?? "default";
      return respond(200, fixture(`projection_${scheme}`));
    }
    if (path.includes("/rankings")) {
      const scheme = url.searchParams.get("scheme") ?? "default";
      return respond(200, fixture(`rankings_${scheme}`));
    }
    return respond(404, { detail: `unrecorded route ${method} ${path}` });
  };

  return { api: new ApiClient("", fetchFn), calls };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
