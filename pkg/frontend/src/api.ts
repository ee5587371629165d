import type {
  ChainsDoc,
  CorpusEntryDoc,
  EditDoc,
  ModelDoc,
  ReportDoc,
  SessionDoc,
} from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  readonly status: number | null;

  constructor(message: string, status: number | null = null) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
  }
}

/** Thin typed client for the /api/v1 endpoints. */
export class ServiceClient {
  private readonly fetchFn: FetchLike;
  private readonly base: string;
  private readonly corpusCache = new Map<string, CorpusEntryDoc>();

  constructor(fetchFn?: FetchLike, base = "") {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    this.base = base;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<{ doc: unknown; revision: number | null }> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchFn(this.base + path, init);
    } catch (error) {
      const reason = error instanceof Error ? error.message : String(error);
      throw new ServiceError(`service unreachable: ${reason}`);
    }
    const text = await response.text();
    let doc: unknown = null;
    if (text) {
      try {
        doc = JSON.parse(text);
      } catch {
        doc = null;
      }
    }
    if (!response.ok) {
      const detail =
        doc && typeof (doc as { detail?: unknown }).detail === "string"
          ? ((doc as { detail: string }).detail)
          : `${method} ${path} failed with status ${response.status}`;
      throw new ServiceError(detail, response.status);
    }
    const header = response.headers.get("x-cybok-revision");
    return { doc, revision: header === null ? null : Number(header) };
  }

  async createSession(graphml?: string): Promise<SessionDoc> {
    const body = graphml === undefined ? {} : { graphml };
    const { doc } = await this.request("POST", "/api/v1/sessions", body);
    return doc as SessionDoc;
  }

  async getModel(sessionId: string): Promise<ModelDoc> {
    const { doc } = await this.request("GET", `/api/v1/sessions/${sessionId}/model`);
    return doc as ModelDoc;
  }

  async putDescriptors(
    sessionId: string,
    ref: string,
    category: string,
    keywords: string[],
  ): Promise<EditDoc> {
    const { doc } = await this.request(
      "PUT",
      `/api/v1/sessions/${sessionId}/elements/${ref}/descriptors/${category}`,
      { keywords },
    );
    return doc as EditDoc;
  }

  async analyze(sessionId: string): Promise<{ report: ReportDoc; revision: number | null }> {
    const { doc, revision } = await this.request(
      "POST",
      `/api/v1/sessions/${sessionId}/analyze`,
    );
    return { report: doc as ReportDoc, revision };
  }

  async chains(sessionId: string, target: string): Promise<ChainsDoc> {
    const { doc } = await this.request(
      "GET",
      `/api/v1/sessions/${sessionId}/chains?target=${encodeURIComponent(target)}`,
    );
    return doc as ChainsDoc;
  }

  /** Corpus entries are immutable for a snapshot, so lookups are cached. */
  async corpusEntry(identifier: string): Promise<CorpusEntryDoc | null> {
    const cached = this.corpusCache.get(identifier);
    if (cached !== undefined) return cached;
    try {
      const { doc } = await this.request("GET", `/api/v1/corpus/entries/${identifier}`);
      const entry = doc as CorpusEntryDoc;
      this.corpusCache.set(identifier, entry);
      return entry;
    } catch (error) {
      if (error instanceof ServiceError && error.status === 404) return null;
      throw error;
    }
  }
}
