import { ApiClient } from "./api.js";
import { ComparisonView } from "./comparison.js";
import { ProjectionView } from "./projection.js";
import { Store } from "./state.js";
import { TableView } from "./table.js";

/** Drag preview strip: one card per candidate scheme plus the save controls.
 *  Nothing is persisted until a save button is clicked. */
export class PreviewPanel {
  constructor(private root: HTMLElement, private store: Store) {
    store.subscribe(() => this.render());
  }

  render(): void {
    const { store } = this;
    this.root.innerHTML = "";
    if (store.toast) {
      const toast = document.createElement("div");
      toast.className = "toast";
      toast.textContent = store.toast;
      toast.addEventListener("click", () => store.dismissToast());
      this.root.appendChild(toast);
    }
    const preview = store.preview;
    if (!preview) return;

    const bar = document.createElement("div");
    bar.className = "preview-bar";
    const drag = preview.drag;
    const label = document.createElement("span");
    label.className = "preview-drag";
    label.textContent = `${drag.entityId}: ${drag.fromRank} → ${drag.toRank}`;
    bar.appendChild(label);

    const labelInput = document.createElement("input");
    labelInput.placeholder = "scheme label (optional)";
    labelInput.className = "scheme-label-input";

    for (const which of ["local", "global", "type"]) {
      const slot = preview.candidates[which];
      const card = document.createElement("div");
      card.className = "preview-card";
      card.dataset.kind = which;
      if (which === store.previewFocus) card.classList.add("focused");
      if (!slot) {
        card.classList.add("failed");
        card.textContent = `${which}: ${preview.errors[which] ?? "not available"}`;
        bar.appendChild(card);
        continue;
      }
      const newRank = slot.ranking.entities.find((e) => e.id === drag.entityId)?.rank;
      const summary = document.createElement("span");
      summary.textContent = `${which}: re-ranks to ${newRank}`;
      card.appendChild(summary);
      card.addEventListener("click", () => store.focusCandidate(which));

      const save = document.createElement("button");
      save.className = "save-scheme";
      save.dataset.which = which;
      save.textContent = `Save ${which}`;
      save.addEventListener("click", (ev) => {
        ev.stopPropagation();
        void store.saveScheme(which, labelInput.value || undefined);
      });
      card.appendChild(save);
      bar.appendChild(card);
    }
    bar.appendChild(labelInput);
    this.root.appendChild(bar);
  }
}

export interface App {
  store: Store;
  table: TableView;
  comparison: ComparisonView;
  projection: ProjectionView;
  preview: PreviewPanel;
}

/** Wire the views into the given root element. */
export function createApp(root: HTMLElement, api: ApiClient): App {
  root.innerHTML = `
    <header class="top-bar">
      <span class="app-name">ratebench</span>
      <textarea id="upload-text" placeholder="paste a CSV table here" rows="2"></textarea>
      <input type="file" id="upload-file" accept=".csv,text/csv" />
      <button id="open-session">Open session</button>
    </header>
    <div id="preview-panel"></div>
    <main>
      <section id="table-view"></section>
      <section id="comparison-view"></section>
      <section id="projection-view"></section>
    </main>
  `;
  const store = new Store(api);
  const app: App = {
    store,
    table: new TableView(root.querySelector("#table-view")!, store),
    comparison: new ComparisonView(root.querySelector("#comparison-view")!, store),
    projection: new ProjectionView(root.querySelector("#projection-view")!, store),
    preview: new PreviewPanel(root.querySelector("#preview-panel")!, store),
  };

  const openButton = root.querySelector<HTMLButtonElement>("#open-session")!;
  openButton.addEventListener("click", async () => {
    const fileInput = root.querySelector<HTMLInputElement>("#upload-file")!;
    const textInput = root.querySelector<HTMLTextAreaElement>("#upload-text")!;
    let text = textInput.value;
    const file = fileInput.files?.[0];
    if (file) text = await file.text();
    if (!text.trim()) return;
    await store.openSession(text);
    await store.loadProjections();
  });
  return app;
}

declare global {
  interface Window {
    ratebench?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const base = (document.getElementById("app") as HTMLElement).dataset.api ?? "";
  window.ratebench = createApp(document.getElementById("app") as HTMLElement, new ApiClient(base));
}
