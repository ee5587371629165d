// Contract tests: the console is driven against recorded service responses
// (tests/fixtures/, captured from a live `cybok serve`), so every rendered
// state is checked against what the service actually said.
import { beforeEach, describe, expect, it } from "vitest";

import { ServiceClient } from "../src/api";
import { App } from "../src/app";
import type {
  ChainsDoc,
  CorpusEntryDoc,
  ReportDoc,
  SessionDoc,
} from "../src/types";
import { ReplayService, gatedFetch, recordedJson } from "./replay";

const SESSION = recordedJson<SessionDoc>("create");
const BASELINE = recordedJson<ReportDoc>("analyze-baseline");
const CHAINS = recordedJson<ChainsDoc>("chains-primary");

function mount(): HTMLElement {
  document.body.innerHTML = '<div id="app"></div>';
  return document.body.querySelector<HTMLElement>("#app")!;
}

async function startApp(
  replay: ReplayService,
  graphml?: string,
): Promise<{ app: App; root: HTMLElement }> {
  const root = mount();
  const app = new App(root, new ServiceClient(replay.fetch));
  await app.start(graphml);
  return { app, root };
}

function click(element: Element | null): void {
  if (!element) throw new Error("expected element to click");
  element.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

function surfaceMarked(root: HTMLElement): string[] {
  return Array.from(root.querySelectorAll<SVGGElement>('[data-surface="true"]'))
    .map((node) => node.dataset.assetId ?? "")
    .sort();
}

async function analyzed(replay: ReplayService): Promise<{ app: App; root: HTMLElement }> {
  const { app, root } = await startApp(replay);
  click(root.querySelector('[data-role="analyze"]'));
  await app.whenIdle();
  return { app, root };
}

describe("topology view", () => {
  it("draws every asset and edge of the recorded session model", async () => {
    const { root } = await startApp(new ReplayService("create"));
    const nodeIds = Array.from(root.querySelectorAll<SVGGElement>("[data-asset-id]")).map(
      (node) => node.dataset.assetId,
    );
    const edgeIds = Array.from(root.querySelectorAll<SVGGElement>("[data-edge-id]")).map(
      (edge) => edge.dataset.edgeId,
    );
    expect(nodeIds.sort()).toEqual(SESSION.model.assets.map((asset) => asset.id).sort());
    expect(edgeIds.sort()).toEqual(SESSION.model.edges.map((edge) => edge.id).sort());
    expect(root.textContent).toContain("Telemetry Radio");
    expect(root.textContent).toContain("Primary Application Processor");
  });

  it("shows no surface markings before an analysis has run", async () => {
    const { root } = await startApp(new ReplayService("create"));
    expect(root.querySelectorAll("[data-surface]")).toHaveLength(0);
    expect(root.querySelectorAll(".surface")).toHaveLength(0);
  });

  it("shows hint text for an empty model", async () => {
    const { root } = await startApp(
      new ReplayService("create-empty"),
      "<graphml><graph id='empty' edgedefault='undirected'></graph></graphml>",
    );
    expect(root.querySelectorAll("[data-asset-id]")).toHaveLength(0);
    const hint = root.querySelector('[data-role="canvas-hint"]');
    expect(hint?.textContent).toMatch(/no assets/i);
  });

  it("shows an error banner when the service is unreachable", async () => {
    const root = mount();
    const client = new ServiceClient(() => Promise.reject(new TypeError("connection refused")));
    const app = new App(root, client);
    await app.start();
    const banner = root.querySelector<HTMLElement>('[role="alert"]');
    expect(banner?.hidden).toBe(false);
    expect(banner?.textContent).toContain("service unreachable");
  });
});

describe("attack surface marking", () => {
  it("marks exactly the assets the recorded analysis put on the surface", async () => {
    const { root } = await analyzed(new ReplayService("create", "analyze-baseline"));
    const expected = BASELINE.surface.map((entry) => entry.asset).sort();
    expect(surfaceMarked(root)).toEqual(expected);
    expect(expected).toContain("radio_telemetry");
    expect(expected).toContain("gcs_laptop");
    expect(expected).toContain("gps");
    expect(expected).toContain("camera");
  });

  it("reports an analysis failure in the banner and recovers the controls", async () => {
    const replay = new ReplayService("create");
    const { app, root } = await startApp(replay);
    click(root.querySelector('[data-role="analyze"]'));
    await app.whenIdle();
    const banner = root.querySelector<HTMLElement>('[role="alert"]');
    expect(banner?.hidden).toBe(false);
    expect(root.querySelector<HTMLButtonElement>('[data-role="analyze"]')?.disabled).toBe(false);
  });
});

describe("chain explorer", () => {
  async function explored(): Promise<{ app: App; root: HTMLElement; replay: ReplayService }> {
    const replay = new ReplayService("create", "analyze-baseline", "chains-primary");
    const { app, root } = await analyzed(replay);
    const select = root.querySelector<HTMLSelectElement>('[data-role="chain-target"]')!;
    select.value = "primary_proc";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    click(root.querySelector('[data-role="explore"]'));
    await app.whenIdle();
    return { app, root, replay };
  }

  it("lists the recorded chains to the chosen target", async () => {
    const { root } = await explored();
    const items = root.querySelectorAll('[data-role="chain-list"] button');
    expect(items).toHaveLength(CHAINS.chains.length);
    expect(items[0].textContent).toBe("GPS Receiver → e_gps_serial → Primary Application Processor");
    expect(items[1].textContent).toBe(
      "Imagery Radio → e_imagery_link → Primary Application Processor",
    );
  });

  it("highlights the selected chain's path and shows corpus-backed evidence", async () => {
    const { app, root } = await explored();
    const imageryChain = root.querySelectorAll('[data-role="chain-list"] button')[1];
    click(imageryChain);
    await app.whenIdle();

    for (const ref of ["radio_imagery", "primary_proc"]) {
      expect(
        root.querySelector(`[data-asset-id="${ref}"]`)?.classList.contains("chain-member"),
      ).toBe(true);
    }
    expect(
      root.querySelector('[data-edge-id="e_imagery_link"]')?.classList.contains("chain-member"),
    ).toBe(true);
    expect(
      root.querySelector('[data-asset-id="gps"]')?.classList.contains("chain-member"),
    ).toBe(false);

    const panel = root.querySelector('[data-role="evidence-panel"]')!;
    const cveEntry = recordedJson<CorpusEntryDoc>("corpus/CVE-2015-8732");
    expect(panel.textContent).toContain(cveEntry.description.slice(0, 60));
    const derived = panel.querySelector('[data-identifier="CAPEC-67"]');
    expect(derived?.getAttribute("data-derived")).toBe("true");
  });

  it("only displays identifiers that appear in the recorded responses", async () => {
    const { app, root } = await explored();
    click(root.querySelectorAll('[data-role="chain-list"] button')[1]);
    await app.whenIdle();
    const allowed = new Set<string>();
    for (const chain of CHAINS.chains) {
      for (const element of chain.elements) {
        for (const record of element.evidence) allowed.add(record.attack_vector);
        for (const bucket of Object.values(element.rollup)) {
          for (const identifier of bucket) allowed.add(identifier);
        }
      }
    }
    const rows = root.querySelectorAll<HTMLElement>(
      '[data-role="evidence-panel"] [data-identifier]',
    );
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) {
      expect(allowed).toContain(row.dataset.identifier);
    }
  });

  it("shows an explicit empty state when no chains reach the target", async () => {
    const replay = new ReplayService("create", "analyze-baseline", "chains-empty");
    const { app, root } = await analyzed(replay);
    const select = root.querySelector<HTMLSelectElement>('[data-role="chain-target"]')!;
    select.value = "imagery_proc";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    click(root.querySelector('[data-role="explore"]'));
    await app.whenIdle();
    expect(root.querySelector('[data-role="chain-message"]')?.textContent).toMatch(
      /no admissible chains/i,
    );
    expect(root.querySelectorAll('[data-role="chain-list"] button')).toHaveLength(0);
  });

  it("requires an analysis before chains can be explored", async () => {
    const { root } = await startApp(new ReplayService("create"));
    expect(root.querySelector<HTMLButtonElement>('[data-role="explore"]')?.disabled).toBe(true);
  });
});

describe("display filters", () => {
  async function withEvidencePanel(): Promise<{
    app: App;
    root: HTMLElement;
    replay: ReplayService;
  }> {
    const replay = new ReplayService("create", "analyze-baseline", "chains-primary");
    const { app, root } = await analyzed(replay);
    const select = root.querySelector<HTMLSelectElement>('[data-role="chain-target"]')!;
    select.value = "primary_proc";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    click(root.querySelector('[data-role="explore"]'));
    await app.whenIdle();
    click(root.querySelectorAll('[data-role="chain-list"] button')[1]);
    await app.whenIdle();
    return { app, root, replay };
  }

  function visibleRows(root: HTMLElement): HTMLElement[] {
    return Array.from(
      root.querySelectorAll<HTMLElement>('[data-role="evidence-panel"] [data-identifier]'),
    ).filter((row) => !row.hidden);
  }

  it("narrows the evidence display without any service round trip", async () => {
    const { root, replay } = await withEvidencePanel();
    const before = visibleRows(root).map((row) => row.dataset.identifier);
    const requestsBefore = replay.requests.length;

    const capecBox = root.querySelector<HTMLInputElement>('[data-filter-db="CAPEC"]')!;
    capecBox.checked = true;
    capecBox.dispatchEvent(new Event("change", { bubbles: true }));

    const filtered = visibleRows(root);
    expect(filtered.length).toBeGreaterThan(0);
    expect(filtered.length).toBeLessThan(before.length);
    for (const row of filtered) {
      expect(row.dataset.database).toBe("CAPEC");
    }
    expect(replay.requests.length).toBe(requestsBefore);

    // Re-applying the same filter changes nothing (idempotent).
    capecBox.dispatchEvent(new Event("change", { bubbles: true }));
    expect(visibleRows(root).map((row) => row.dataset.identifier)).toEqual(
      filtered.map((row) => row.dataset.identifier),
    );

    capecBox.checked = false;
    capecBox.dispatchEvent(new Event("change", { bubbles: true }));
    expect(visibleRows(root).map((row) => row.dataset.identifier)).toEqual(before);
    expect(replay.requests.length).toBe(requestsBefore);
  });

  it("keyword filter matches case-insensitively against keyword and identifier", async () => {
    const { root } = await withEvidencePanel();
    const keywordInput = root.querySelector<HTMLInputElement>('[data-role="filter-keyword"]')!;
    keywordInput.value = "zigbee";
    keywordInput.dispatchEvent(new Event("input", { bubbles: true }));
    const rows = visibleRows(root);
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) {
      const haystack = `${row.dataset.keyword ?? ""} ${row.dataset.identifier}`.toLowerCase();
      expect(haystack).toContain("zigbee");
    }
  });

  it("filters the selected element's evidence list by category", async () => {
    const { root } = await withEvidencePanel();
    click(root.querySelector('[data-asset-id="radio_imagery"]'));
    const list = root.querySelector('[data-role="element-evidence"]')!;
    expect(list.querySelectorAll("[data-evidence-row]").length).toBeGreaterThan(0);

    const categorySelect = root.querySelector<HTMLSelectElement>('[data-role="filter-category"]')!;
    for (const option of categorySelect.options) {
      option.selected = option.value === "entry_points";
    }
    categorySelect.dispatchEvent(new Event("change", { bubbles: true }));

    const rows = Array.from(
      list.querySelectorAll<HTMLElement>("[data-evidence-row]"),
    ).filter((row) => !row.hidden);
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) {
      expect(row.dataset.category).toBe("entry_points");
    }
  });
});

describe("what-if editing", () => {
  it("keeps the descriptor form fixed to the seven categories", async () => {
    const { root } = await analyzed(new ReplayService("create", "analyze-baseline"));
    click(root.querySelector('[data-asset-id="radio_telemetry"]'));
    const inputs = root.querySelectorAll('[data-role="descriptor-form"] input[data-category]');
    expect(Array.from(inputs).map((input) => input.getAttribute("data-category"))).toEqual([
      "operating_system",
      "device_name",
      "communication",
      "hardware",
      "firmware",
      "software",
      "entry_points",
    ]);
  });

  it("clearing the XBee radio's entry keywords removes its surface marking", async () => {
    const replay = new ReplayService(
      "create",
      "analyze-baseline",
      "edit-clear",
      "analyze-after-clear",
      "edit-restore",
      "analyze-after-restore",
    );
    const { app, root } = await analyzed(replay);
    const node = root.querySelector<SVGGElement>('[data-asset-id="radio_telemetry"]')!;
    expect(node.dataset.surface).toBe("true");

    click(node);
    const input = root.querySelector<HTMLInputElement>('input[data-category="entry_points"]')!;
    expect(input.value).toBe("ZigBee");

    // Scripted what-if: clear the entry keywords and apply.
    input.value = "";
    click(root.querySelector('[data-role="apply-entry_points"]'));
    await app.whenIdle();

    const put = replay.requests.find((request) => request.method === "PUT");
    expect(put?.path).toContain("/elements/radio_telemetry/descriptors/entry_points");
    expect(JSON.parse(put?.body ?? "{}")).toEqual({ keywords: [] });

    expect(node.dataset.surface).toBe("false");
    expect(node.classList.contains("surface")).toBe(false);
    expect(node.classList.contains("surface-lost")).toBe(true);
    expect(surfaceMarked(root)).toEqual([
      "camera",
      "gcs_laptop",
      "gps",
      "radio_imagery",
      "radio_rc",
    ]);
    expect(root.querySelector('[data-role="status"]')?.textContent).toContain(
      "Removed from surface: Telemetry Radio",
    );

    // Round trip: re-entering the original keywords restores the marking.
    input.value = "ZigBee";
    click(root.querySelector('[data-role="apply-entry_points"]'));
    await app.whenIdle();
    expect(node.dataset.surface).toBe("true");
    expect(node.classList.contains("surface")).toBe(true);
    expect(node.classList.contains("surface-lost")).toBe(false);
  });

  it("shows a rejected edit inline at the edited field", async () => {
    const replay = new ReplayService("create", "analyze-baseline");
    const { app, root } = await analyzed(replay);
    click(root.querySelector('[data-asset-id="radio_telemetry"]'));
    const input = root.querySelector<HTMLInputElement>('input[data-category="entry_points"]')!;
    input.value = "Wi-Fi";
    click(root.querySelector('[data-role="apply-entry_points"]'));
    await app.whenIdle();
    const error = root.querySelector<HTMLElement>('[data-role="error-entry_points"]');
    expect(error?.hidden).toBe(false);
    expect(error?.textContent).not.toBe("");
  });

  it("locks the controls while an analysis is in flight", async () => {
    const replay = new ReplayService("create", "analyze-baseline");
    const gate = gatedFetch(replay.fetch, (url) => url.endsWith("/analyze"));
    const root = mount();
    const app = new App(root, new ServiceClient(gate.fetch));
    await app.start();
    click(root.querySelector('[data-asset-id="radio_telemetry"]'));

    click(root.querySelector('[data-role="analyze"]'));
    await Promise.resolve();
    expect(root.querySelector<HTMLButtonElement>('[data-role="analyze"]')?.disabled).toBe(true);
    expect(
      root.querySelector<HTMLButtonElement>('[data-role="apply-entry_points"]')?.disabled,
    ).toBe(true);
    expect(
      root.querySelector<HTMLInputElement>('input[data-category="entry_points"]')?.disabled,
    ).toBe(true);

    gate.release();
    await app.whenIdle();
    expect(root.querySelector<HTMLButtonElement>('[data-role="analyze"]')?.disabled).toBe(false);
    expect(
      root.querySelector<HTMLButtonElement>('[data-role="apply-entry_points"]')?.disabled,
    ).toBe(false);
  });
});
