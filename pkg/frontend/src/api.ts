export interface Candidate {
  text: string;
  score: number;
  trace: string[];
}

export interface ExpandRequest {
  words: string[];
  top_k?: number;
  contractions?: boolean;
}

export interface ExpandResponse {
  candidates: Candidate[];
  diagnostics: string[];
}

export interface LexiconEntrySummary {
  category: string;
  lemma: string;
  [field: string]: unknown;
}

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ExpandoClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ApiError(`service unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { error?: string };
        if (body.error) detail = body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, response.status);
    }
    return response.json();
  }

  async health(): Promise<boolean> {
    try {
      const body = (await this.request("/health")) as { status?: string };
      return body.status === "ok";
    } catch {
      return false;
    }
  }

  async expand(
    request: ExpandRequest,
    signal?: AbortSignal,
  ): Promise<ExpandResponse> {
    return (await this.request("/expand", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
      signal,
    })) as ExpandResponse;
  }

  async lemmas(category: string): Promise<string[]> {
    const body = (await this.request(
      `/lexicon?category=${encodeURIComponent(category)}`,
    )) as { lemmas: string[] };
    return body.lemmas;
  }

  async entry(lemma: string): Promise<LexiconEntrySummary[]> {
    const body = (await this.request(
      `/lexicon/${encodeURIComponent(lemma)}`,
    )) as { entries: LexiconEntrySummary[] };
    return body.entries;
  }
}
