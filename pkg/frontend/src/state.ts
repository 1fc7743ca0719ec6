import type { ExpandResponse } from "./api.js";

export interface ChosenSentence {
  text: string;
  words: string[];
}

/**
 * Board state: the ordered word selection, the not/? toggles, the last
 * expansion response, and the session's chosen-sentence history.
 *
 * The word order is entirely user-controlled and is never reordered on the
 * way to the service; the toggles map one-to-one to the presence of the
 * "not" / "?" markers in the request payload.
 */
export class BoardState {
  private words: string[] = [];
  negation = false;
  question = false;
  response: ExpandResponse | null = null;
  error: string | null = null;
  history: ChosenSentence[] = [];

  get selectedWords(): readonly string[] {
    return this.words;
  }

  get canSubmit(): boolean {
    return this.words.length > 0;
  }

  addWord(word: string): void {
    const trimmed = word.trim();
    if (trimmed) this.words.push(trimmed);
  }

  removeWord(index: number): void {
    if (index >= 0 && index < this.words.length) this.words.splice(index, 1);
  }

  toggleNegation(): void {
    this.negation = !this.negation;
  }

  toggleQuestion(): void {
    this.question = !this.question;
  }

  /** Request payload: selection in order, plus markers per the toggles. */
  payloadWords(): string[] {
    const payload = [...this.words];
    if (this.negation) payload.push("not");
    if (this.question) payload.push("?");
    return payload;
  }

  applyResponse(response: ExpandResponse): void {
    this.response = response;
    this.error = null;
  }

  /** Record a service failure; the board selection stays intact. */
  applyError(message: string): void {
    this.error = message;
  }

  /** Pick a candidate: append to history, clear the board for a new turn. */
  chooseCandidate(index: number): ChosenSentence | null {
    const candidate = this.response?.candidates[index];
    if (!candidate) return null;
    const chosen = { text: candidate.text, words: this.payloadWords() };
    this.history.push(chosen);
    this.words = [];
    this.negation = false;
    this.question = false;
    this.response = null;
    this.error = null;
    return chosen;
  }
}

/**
 * Submit the board through the client, cancelling any in-flight request.
 * Returns the response applied to the state, or null when superseded or
 * failed (the error banner text lands in `state.error`).
 */
export class BoardSubmitter {
  private controller: AbortController | null = null;

  constructor(
    private readonly state: BoardState,
    private readonly expandFn: (
      words: string[],
      signal: AbortSignal,
    ) => Promise<ExpandResponse>,
  ) {}

  async submit(): Promise<ExpandResponse | null> {
    if (!this.state.canSubmit) return null;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    try {
      const response = await this.expandFn(
        this.state.payloadWords(),
        controller.signal,
      );
      if (this.controller !== controller) return null; // superseded
      this.state.applyResponse(response);
      return response;
    } catch (err) {
      if (controller.signal.aborted) return null; // cancelled by a newer submit
      this.state.applyError(err instanceof Error ? err.message : String(err));
      return null;
    }
  }
}
