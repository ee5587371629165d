import type { ChainDoc, ChainsDoc, CorpusEntryDoc } from "./types";
import { databaseOf } from "./types";
import type { Filters } from "./filters";
import { emptyFilters, rowMatches } from "./filters";

export type CorpusLookup = (identifier: string) => Promise<CorpusEntryDoc | null>;

const EXCERPT_LENGTH = 180;

function excerpt(text: string): string {
  if (text.length <= EXCERPT_LENGTH) return text;
  return text.slice(0, EXCERPT_LENGTH).trimEnd() + "…";
}

// Exploit-chain explorer: pick a target, list the admissible chains the
// service returned, and inspect one chain's per-element evidence. Names and
// descriptions come from the corpus endpoint; display filters only toggle
// row visibility.
export class ChainExplorer {
  private readonly lookup: CorpusLookup;
  private readonly onSelect: (chain: ChainDoc | null) => void;
  private readonly onExplore: (target: string) => void;
  private readonly targetSelect: HTMLSelectElement;
  private readonly exploreButton: HTMLButtonElement;
  private readonly message: HTMLElement;
  private readonly list: HTMLOListElement;
  private readonly panel: HTMLElement;
  private labels = new Map<string, string>();
  private selected: ChainDoc | null = null;
  private filters: Filters = emptyFilters();
  private rendering: Promise<void> = Promise.resolve();
  private armed = false;
  private busy = false;

  constructor(
    container: HTMLElement,
    lookup: CorpusLookup,
    callbacks: {
      onExplore: (target: string) => void;
      onSelect: (chain: ChainDoc | null) => void;
    },
  ) {
    this.lookup = lookup;
    this.onExplore = callbacks.onExplore;
    this.onSelect = callbacks.onSelect;

    const heading = document.createElement("h2");
    heading.textContent = "Exploit chains";

    const controls = document.createElement("div");
    controls.className = "chain-controls";
    this.targetSelect = document.createElement("select");
    this.targetSelect.dataset.role = "chain-target";
    this.exploreButton = document.createElement("button");
    this.exploreButton.type = "button";
    this.exploreButton.dataset.role = "explore";
    this.exploreButton.textContent = "Find chains";
    this.exploreButton.disabled = true;
    this.exploreButton.addEventListener("click", () => {
      const target = this.targetSelect.value;
      if (target) this.onExplore(target);
    });
    controls.append(this.targetSelect, this.exploreButton);

    this.message = document.createElement("p");
    this.message.className = "chain-message";
    this.message.dataset.role = "chain-message";
    this.message.hidden = true;

    this.list = document.createElement("ol");
    this.list.className = "chain-list";
    this.list.dataset.role = "chain-list";

    this.panel = document.createElement("div");
    this.panel.className = "evidence-panel";
    this.panel.dataset.role = "evidence-panel";

    container.append(heading, controls, this.message, this.list, this.panel);
  }

  /** Resolves once the evidence panel for the last selection is complete. */
  settled(): Promise<void> {
    return this.rendering;
  }

  setTargets(assets: { id: string; label: string }[]): void {
    this.labels = new Map(assets.map((asset) => [asset.id, asset.label || asset.id]));
    this.targetSelect.textContent = "";
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = "choose a target asset…";
    this.targetSelect.append(placeholder);
    for (const asset of assets) {
      const option = document.createElement("option");
      option.value = asset.id;
      option.textContent = asset.label || asset.id;
      this.targetSelect.append(option);
    }
  }

  /** Chains need an analysis first; the app arms the button after one. */
  setArmed(armed: boolean): void {
    this.armed = armed;
    this.syncControls();
  }

  setBusy(busy: boolean): void {
    this.busy = busy;
    this.syncControls();
    for (const button of this.list.querySelectorAll("button")) {
      button.disabled = busy;
    }
  }

  private syncControls(): void {
    this.exploreButton.disabled = this.busy || !this.armed;
    this.targetSelect.disabled = this.busy;
  }

  reset(): void {
    this.selected = null;
    this.list.textContent = "";
    this.panel.textContent = "";
    this.message.hidden = true;
    this.targetSelect.value = "";
    this.setArmed(false);
  }

  showChains(doc: ChainsDoc): void {
    this.selected = null;
    this.onSelect(null);
    this.list.textContent = "";
    this.panel.textContent = "";
    const targetLabel = this.labels.get(doc.target) ?? doc.target;
    if (doc.chains.length === 0) {
      this.message.textContent = `No admissible chains reach ${targetLabel}.`;
      this.message.hidden = false;
      return;
    }
    this.message.textContent = `${doc.chains.length} chain(s) to ${targetLabel}` +
      (doc.truncated ? " (list truncated)" : "");
    this.message.hidden = false;
    for (const chain of doc.chains) {
      const item = document.createElement("li");
      const button = document.createElement("button");
      button.type = "button";
      button.dataset.chainSource = chain.source;
      button.textContent = chain.path
        .map((ref) => this.labels.get(ref) ?? ref)
        .join(" → ");
      button.addEventListener("click", () => {
        this.rendering = this.select(chain, button);
      });
      item.append(button);
      this.list.append(item);
    }
  }

  private async select(chain: ChainDoc, button: HTMLButtonElement): Promise<void> {
    this.selected = chain;
    for (const other of this.list.querySelectorAll("button")) {
      other.classList.toggle("active", other === button);
    }
    this.onSelect(chain);
    await this.renderEvidence(chain);
    this.applyDisplayFilters(this.filters);
  }

  private async renderEvidence(chain: ChainDoc): Promise<void> {
    this.panel.textContent = "";
    for (const element of chain.elements) {
      const section = document.createElement("section");
      section.dataset.chainElement = element.ref;

      const heading = document.createElement("h4");
      heading.textContent = `${element.label || element.ref} (${element.kind})`;
      section.append(heading);

      const rows = document.createElement("ul");
      rows.className = "evidence-rows";

      const direct = new Map<string, { category: string; keyword: string }>();
      for (const record of element.evidence) {
        if (!direct.has(record.attack_vector)) {
          direct.set(record.attack_vector, {
            category: record.category,
            keyword: record.keyword,
          });
        }
      }
      for (const [identifier, record] of direct) {
        rows.append(await this.evidenceRow(identifier, record));
      }
      const rollupIds = [
        ...element.rollup.cves,
        ...element.rollup.direct_cwes,
        ...element.rollup.derived_cwes,
        ...element.rollup.direct_capecs,
        ...element.rollup.derived_capecs,
      ];
      for (const identifier of rollupIds) {
        if (!direct.has(identifier)) {
          rows.append(await this.evidenceRow(identifier, null));
        }
      }
      section.append(rows);
      this.panel.append(section);
    }
  }

  private async evidenceRow(
    identifier: string,
    record: { category: string; keyword: string } | null,
  ): Promise<HTMLLIElement> {
    const row = document.createElement("li");
    row.dataset.evidenceRow = "true";
    row.dataset.identifier = identifier;
    const database = databaseOf(identifier);
    if (database) row.dataset.database = database;
    if (record) {
      row.dataset.category = record.category;
      row.dataset.keyword = record.keyword;
    } else {
      row.dataset.derived = "true";
    }

    const head = document.createElement("strong");
    head.textContent = identifier;
    row.append(head);
    if (record) {
      const via = document.createElement("span");
      via.className = "evidence-via";
      via.textContent = ` via ${record.category} “${record.keyword}”`;
      row.append(via);
    } else {
      const via = document.createElement("span");
      via.className = "evidence-via";
      via.textContent = " (rollup)";
      row.append(via);
    }

    const entry = await this.lookup(identifier);
    const body = document.createElement("p");
    body.className = "evidence-text";
    if (entry === null) {
      body.textContent = "not in the corpus snapshot";
    } else if (entry.name) {
      body.textContent = `${entry.name} — ${excerpt(entry.description)}`;
    } else {
      body.textContent = excerpt(entry.description);
    }
    row.append(body);
    return row;
  }

  /** Narrow the visible evidence rows; never re-fetches anything. */
  applyDisplayFilters(filters: Filters): void {
    this.filters = filters;
    for (const row of this.panel.querySelectorAll<HTMLElement>("[data-evidence-row]")) {
      const visible = rowMatches(filters, {
        identifier: row.dataset.identifier ?? "",
        category: row.dataset.category,
        keyword: row.dataset.keyword,
      });
      row.hidden = !visible;
    }
  }

  selectedChain(): ChainDoc | null {
    return this.selected;
  }
}
