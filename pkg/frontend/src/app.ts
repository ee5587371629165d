import type { ServiceClient } from "./api";
import { ServiceError } from "./api";
import { ChainExplorer } from "./chains";
import { DescriptorEditor } from "./editor";
import type { EditorElement } from "./editor";
import type { Filters } from "./filters";
import { emptyFilters, rowMatches } from "./filters";
import { GraphView } from "./graphview";
import type {
  Category,
  ChainDoc,
  Database,
  ModelDoc,
  ReportDoc,
} from "./types";
import { CATEGORIES, DATABASES } from "./types";

export interface ViewState {
  sessionId: string | null;
  revision: number;
  corpusRef: string | null;
  model: ModelDoc | null;
  report: ReportDoc | null;
  selectedElement: string | null;
  chainTarget: string | null;
  filters: Filters;
}

const TEMPLATE = `
  <div class="error-banner" role="alert" data-role="banner" hidden></div>
  <header class="topbar">
    <h1>cybok</h1>
    <span class="session-info" data-role="session-info"></span>
    <label class="upload-label">Load model
      <input type="file" data-role="upload" accept=".graphml,.xml" />
    </label>
    <button type="button" data-role="analyze" disabled>Analyze</button>
    <span class="status" data-role="status" aria-live="polite"></span>
  </header>
  <div class="filter-bar" data-role="filter-bar">
    <span class="filter-title">Show evidence:</span>
    <span data-role="filter-databases"></span>
    <select data-role="filter-category" multiple size="1" title="categories"></select>
    <input type="search" data-role="filter-keyword" placeholder="keyword contains…" />
  </div>
  <main class="workbench">
    <section class="canvas" data-role="canvas"></section>
    <aside class="sidebar">
      <section class="inspector">
        <h2>Element</h2>
        <div data-role="editor"></div>
        <ul class="evidence-rows" data-role="element-evidence"></ul>
      </section>
      <section data-role="chains"></section>
    </aside>
  </main>
`;

function shortRef(corpusRef: string): string {
  const hash = corpusRef.split(":").pop() ?? corpusRef;
  return hash.slice(0, 12);
}

// The analyst console. All displayed analysis results come from service
// responses; this class only routes them between the service client and the
// views, and keeps at most one service round trip in flight at a time.
export class App {
  readonly state: ViewState = {
    sessionId: null,
    revision: 0,
    corpusRef: null,
    model: null,
    report: null,
    selectedElement: null,
    chainTarget: null,
    filters: emptyFilters(),
  };

  private readonly client: ServiceClient;
  private readonly graph: GraphView;
  private readonly editor: DescriptorEditor;
  private readonly explorer: ChainExplorer;
  private readonly banner: HTMLElement;
  private readonly sessionInfo: HTMLElement;
  private readonly statusLine: HTMLElement;
  private readonly analyzeButton: HTMLButtonElement;
  private readonly uploadInput: HTMLInputElement;
  private readonly databaseToggles = new Map<Database, HTMLInputElement>();
  private readonly categorySelect: HTMLSelectElement;
  private readonly keywordInput: HTMLInputElement;
  private readonly evidenceList: HTMLElement;
  private inFlight: Promise<void> | null = null;
  private previousSurface: string[] | null = null;

  constructor(root: HTMLElement, client: ServiceClient) {
    this.client = client;
    root.innerHTML = TEMPLATE;
    const pick = <T extends Element>(selector: string): T => {
      const found = root.querySelector<T>(selector);
      if (!found) throw new Error(`missing UI element ${selector}`);
      return found;
    };

    this.banner = pick('[data-role="banner"]');
    this.sessionInfo = pick('[data-role="session-info"]');
    this.statusLine = pick('[data-role="status"]');
    this.analyzeButton = pick<HTMLButtonElement>('[data-role="analyze"]');
    this.uploadInput = pick<HTMLInputElement>('[data-role="upload"]');
    this.evidenceList = pick('[data-role="element-evidence"]');

    const databaseBar = pick('[data-role="filter-databases"]');
    for (const database of DATABASES) {
      const label = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.dataset.filterDb = database;
      box.addEventListener("change", () => this.refreshFilters());
      label.append(box, database);
      databaseBar.append(label);
      this.databaseToggles.set(database, box);
    }
    this.categorySelect = pick<HTMLSelectElement>('[data-role="filter-category"]');
    for (const category of CATEGORIES) {
      const option = document.createElement("option");
      option.value = category;
      option.textContent = category.replace(/_/g, " ");
      this.categorySelect.append(option);
    }
    this.categorySelect.addEventListener("change", () => this.refreshFilters());
    this.keywordInput = pick<HTMLInputElement>('[data-role="filter-keyword"]');
    this.keywordInput.addEventListener("input", () => this.refreshFilters());

    this.graph = new GraphView(pick('[data-role="canvas"]'), (ref) => this.select(ref));
    this.editor = new DescriptorEditor(pick('[data-role="editor"]'), (ref, category, keywords) =>
      this.track(() => this.applyEdit(ref, category, keywords)),
    );
    this.explorer = new ChainExplorer(
      pick('[data-role="chains"]'),
      (identifier) => this.client.corpusEntry(identifier),
      {
        onExplore: (target) => this.track(() => this.exploreChains(target)),
        onSelect: (chain: ChainDoc | null) => this.graph.setChain(chain ? chain.path : null),
      },
    );

    this.analyzeButton.addEventListener("click", () => this.track(() => this.runAnalysis()));
    this.uploadInput.addEventListener("change", () => {
      const file = this.uploadInput.files?.[0];
      if (!file) return;
      this.track(() => file.text().then((graphml) => this.openSession(graphml)));
    });
  }

  /** Resolves when the current round trip (if any) has fully rendered. */
  async whenIdle(): Promise<void> {
    while (this.inFlight) {
      await this.inFlight;
    }
    await this.explorer.settled();
  }

  async start(graphml?: string): Promise<void> {
    await this.openSession(graphml);
    await this.whenIdle();
  }

  /** Serializes service round trips: one analysis in flight per session. */
  private track(work: () => Promise<void>): void {
    if (this.inFlight) return;
    this.setBusy(true);
    this.inFlight = work()
      .catch((error) => this.showError(error))
      .finally(() => {
        this.inFlight = null;
        this.setBusy(false);
      });
  }

  private setBusy(busy: boolean): void {
    this.analyzeButton.disabled = busy || this.state.sessionId === null;
    this.uploadInput.disabled = busy;
    this.editor.setBusy(busy);
    this.explorer.setBusy(busy);
  }

  private async openSession(graphml?: string): Promise<void> {
    this.clearError();
    let session;
    try {
      session = await this.client.createSession(graphml);
    } catch (error) {
      this.showError(error);
      return;
    }
    this.state.sessionId = session.session_id;
    this.state.revision = session.revision;
    this.state.corpusRef = session.corpus_ref;
    this.state.model = session.model;
    this.state.report = null;
    this.state.selectedElement = null;
    this.state.chainTarget = null;
    this.previousSurface = null;

    this.sessionInfo.textContent =
      `session ${session.session_id} · corpus ${shortRef(session.corpus_ref)}`;
    this.graph.setModel(session.model);
    this.graph.setSurface(null);
    this.editor.clear();
    this.renderElementEvidence();
    this.explorer.setTargets(session.model.assets);
    this.explorer.reset();
    this.analyzeButton.disabled = false;
    this.setStatus("Model loaded; no analysis yet.");
  }

  private async runAnalysis(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    this.clearError();
    const { report, revision } = await this.client.analyze(sessionId);
    this.state.report = report;
    if (revision !== null) this.state.revision = revision;

    const surface = report.surface.map((entry) => entry.asset);
    const lost = (this.previousSurface ?? []).filter((id) => !surface.includes(id));
    const gained =
      this.previousSurface === null
        ? []
        : surface.filter((id) => !this.previousSurface!.includes(id));
    this.graph.setSurface(surface, lost);
    this.previousSurface = surface;

    let status = `Attack surface: ${surface.length} of ${report.model.assets} assets.`;
    if (lost.length > 0) status += ` Removed from surface: ${this.labelAll(lost)}.`;
    if (gained.length > 0) status += ` Added to surface: ${this.labelAll(gained)}.`;
    this.setStatus(status);

    this.renderElementEvidence();
    this.explorer.setArmed(true);
    if (this.state.chainTarget) {
      // A what-if edit invalidates previously fetched chains; refresh them
      // for the target the analyst is looking at.
      await this.exploreChains(this.state.chainTarget);
    }
  }

  private async applyEdit(ref: string, category: Category, keywords: string[]): Promise<void> {
    const sessionId = this.state.sessionId;
    const model = this.state.model;
    if (!sessionId || !model) return;
    this.clearError();
    let edit;
    try {
      edit = await this.client.putDescriptors(sessionId, ref, category, keywords);
    } catch (error) {
      if (error instanceof ServiceError) {
        this.editor.showError(category, error.message);
        return;
      }
      throw error;
    }
    this.state.revision = edit.revision;
    const asset = model.assets.find((candidate) => candidate.id === ref);
    const edge = model.edges.find((candidate) => candidate.id === ref);
    const element = asset ?? edge;
    if (element) element.descriptors[category] = edit.keywords;
    if (this.editor.element()?.ref === ref && element) {
      this.editor.show(this.editorView(ref));
    }
    await this.runAnalysis();
  }

  private async exploreChains(target: string): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId) return;
    this.clearError();
    const doc = await this.client.chains(sessionId, target);
    this.state.chainTarget = target;
    this.explorer.showChains(doc);
  }

  private select(ref: string | null): void {
    this.state.selectedElement = ref;
    this.graph.setSelected(ref);
    if (ref === null) {
      this.editor.clear();
    } else {
      this.editor.show(this.editorView(ref));
    }
    this.renderElementEvidence();
  }

  private editorView(ref: string): EditorElement {
    const model = this.state.model!;
    const asset = model.assets.find((candidate) => candidate.id === ref);
    if (asset) {
      return { ref, kind: "asset", label: asset.label, descriptors: asset.descriptors };
    }
    const edge = model.edges.find((candidate) => candidate.id === ref)!;
    return { ref, kind: "edge", label: edge.id, descriptors: edge.descriptors };
  }

  /** Evidence rows for the selected element, narrowed by display filters. */
  private renderElementEvidence(): void {
    this.evidenceList.textContent = "";
    const ref = this.state.selectedElement;
    if (!ref) return;
    const report = this.state.report;
    if (!report) {
      const note = document.createElement("li");
      note.className = "evidence-note";
      note.textContent = "Run an analysis to see matching attack vectors.";
      this.evidenceList.append(note);
      return;
    }
    for (const record of report.evidence) {
      if (record.element !== ref) continue;
      const row = document.createElement("li");
      row.dataset.evidenceRow = "true";
      row.dataset.identifier = record.attack_vector;
      row.dataset.category = record.category;
      row.dataset.keyword = record.keyword;
      const database = record.attack_vector.split("-", 1)[0];
      row.dataset.database = database;
      row.textContent = `${record.attack_vector} via ${record.category} “${record.keyword}”`;
      this.evidenceList.append(row);
    }
    if (this.evidenceList.childElementCount === 0) {
      const note = document.createElement("li");
      note.className = "evidence-note";
      note.textContent = "No matching attack vectors for this element.";
      this.evidenceList.append(note);
    }
    this.applyElementFilters();
  }

  private refreshFilters(): void {
    const databases = DATABASES.filter(
      (database) => this.databaseToggles.get(database)?.checked,
    );
    const categories = Array.from(this.categorySelect.selectedOptions).map(
      (option) => option.value as Category,
    );
    this.state.filters = {
      databases,
      categories,
      keyword: this.keywordInput.value,
    };
    this.applyElementFilters();
    this.explorer.applyDisplayFilters(this.state.filters);
  }

  private applyElementFilters(): void {
    for (const row of this.evidenceList.querySelectorAll<HTMLElement>("[data-evidence-row]")) {
      row.hidden = !rowMatches(this.state.filters, {
        identifier: row.dataset.identifier ?? "",
        category: row.dataset.category,
        keyword: row.dataset.keyword,
      });
    }
  }

  private labelAll(refs: string[]): string {
    const model = this.state.model;
    return refs
      .map((ref) => model?.assets.find((asset) => asset.id === ref)?.label || ref)
      .join(", ");
  }

  private setStatus(text: string): void {
    this.statusLine.textContent = text;
  }

  private showError(error: unknown): void {
    const message =
      error instanceof Error ? error.message : `unexpected failure: ${String(error)}`;
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private clearError(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }
}
