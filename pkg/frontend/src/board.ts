import type { ExpandRequest, ExpandResponse } from "./api.js";
import { BoardState, BoardSubmitter } from "./state.js";

const TILE_CATEGORIES = [
  "pronoun",
  "noun",
  "verb",
  "adjective",
  "adverb",
  "determiner",
  "preposition",
];

/** The slice of the service client the board needs (eases test doubles). */
export interface BoardClient {
  expand(request: ExpandRequest, signal?: AbortSignal): Promise<ExpandResponse>;
  lemmas(category: string): Promise<string[]>;
}

export class Board {
  readonly state = new BoardState();
  private readonly submitter: BoardSubmitter;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: BoardClient,
  ) {
    this.submitter = new BoardSubmitter(this.state, (words, signal) =>
      this.client.expand({ words }, signal),
    );
    this.root.innerHTML = `
      <section class="selection">
        <div id="selected" class="selected-row"></div>
        <div class="controls">
          <button id="toggle-not" type="button">not</button>
          <button id="toggle-question" type="button">?</button>
          <button id="submit" type="button" disabled>Expand</button>
          <button id="clear" type="button">Clear</button>
        </div>
        <div class="free-text">
          <input id="free-word" placeholder="type a word (unknown words become names)" />
          <button id="add-word" type="button">Add</button>
        </div>
        <div id="error" class="error-banner" hidden></div>
      </section>
      <section id="candidates" class="candidates"></section>
      <section class="tiles" id="tiles"></section>
      <section class="history">
        <h2>Chosen sentences</h2>
        <ol id="history"></ol>
      </section>
    `;
    this.wireControls();
  }

  private byId<T extends HTMLElement>(id: string): T {
    return this.root.querySelector(`#${id}`) as T;
  }

  private wireControls(): void {
    this.byId<HTMLButtonElement>("toggle-not").addEventListener("click", () => {
      this.state.toggleNegation();
      this.render();
      void this.maybeResubmit();
    });
    this.byId<HTMLButtonElement>("toggle-question").addEventListener(
      "click",
      () => {
        this.state.toggleQuestion();
        this.render();
        void this.maybeResubmit();
      },
    );
    this.byId<HTMLButtonElement>("submit").addEventListener("click", () => {
      void this.submit();
    });
    this.byId<HTMLButtonElement>("clear").addEventListener("click", () => {
      while (this.state.selectedWords.length) this.state.removeWord(0);
      this.state.response = null;
      this.render();
    });
    const input = this.byId<HTMLInputElement>("free-word");
    const add = () => {
      this.state.addWord(input.value);
      input.value = "";
      this.render();
      void this.submit();
    };
    this.byId<HTMLButtonElement>("add-word").addEventListener("click", add);
    input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") add();
    });
  }

  /** Fill the tile grid from the service's lexicon category listings. */
  async loadTiles(): Promise<void> {
    const tiles = this.byId<HTMLElement>("tiles");
    tiles.innerHTML = "";
    for (const category of TILE_CATEGORIES) {
      let lemmas: string[];
      try {
        lemmas = await this.client.lemmas(category);
      } catch {
        continue;
      }
      const group = document.createElement("div");
      group.className = "tile-group";
      const heading = document.createElement("h3");
      heading.textContent = category;
      group.appendChild(heading);
      for (const lemma of lemmas) {
        const tile = document.createElement("button");
        tile.type = "button";
        tile.className = "tile";
        tile.textContent = lemma;
        tile.addEventListener("click", () => {
          this.state.addWord(lemma);
          this.render();
          void this.submit();
        });
        group.appendChild(tile);
      }
      tiles.appendChild(group);
    }
  }

  async submit(): Promise<void> {
    if (!this.state.canSubmit) {
      this.render();
      return;
    }
    await this.submitter.submit();
    this.render();
  }

  private async maybeResubmit(): Promise<void> {
    if (this.state.canSubmit && this.state.response) await this.submit();
  }

  render(): void {
    const selected = this.byId<HTMLElement>("selected");
    selected.innerHTML = "";
    this.state.selectedWords.forEach((word, index) => {
      const chip = document.createElement("button");
      chip.type = "button";
      chip.className = "chip";
      chip.textContent = word;
      chip.title = "remove";
      chip.addEventListener("click", () => {
        this.state.removeWord(index);
        this.render();
      });
      selected.appendChild(chip);
    });

    this.byId<HTMLButtonElement>("toggle-not").classList.toggle(
      "active",
      this.state.negation,
    );
    this.byId<HTMLButtonElement>("toggle-question").classList.toggle(
      "active",
      this.state.question,
    );
    this.byId<HTMLButtonElement>("submit").disabled = !this.state.canSubmit;

    const banner = this.byId<HTMLElement>("error");
    banner.hidden = this.state.error === null;
    banner.textContent = this.state.error ?? "";

    const candidates = this.byId<HTMLElement>("candidates");
    candidates.innerHTML = "";
    const response = this.state.response;
    if (!response) return;
    response.candidates.forEach((candidate, index) => {
      const item = document.createElement("div");
      item.className = "candidate";
      const pick = document.createElement("button");
      pick.type = "button";
      pick.className = "candidate-text";
      pick.textContent = candidate.text;
      pick.addEventListener("click", () => {
        this.state.chooseCandidate(index);
        this.render();
        this.renderHistory();
      });
      const score = document.createElement("span");
      score.className = "score";
      score.textContent = candidate.score.toFixed(3);
      const details = document.createElement("details");
      const summary = document.createElement("summary");
      summary.textContent = "trace";
      details.appendChild(summary);
      const steps = document.createElement("ul");
      for (const step of candidate.trace) {
        const li = document.createElement("li");
        li.textContent = step;
        steps.appendChild(li);
      }
      details.appendChild(steps);
      item.append(pick, score, details);
      candidates.appendChild(item);
    });
    for (const line of response.diagnostics) {
      const note = document.createElement("p");
      note.className = "diagnostic";
      note.textContent = line;
      candidates.appendChild(note);
    }
  }

  renderHistory(): void {
    const history = this.byId<HTMLElement>("history");
    history.innerHTML = "";
    for (const chosen of this.state.history) {
      const li = document.createElement("li");
      li.textContent = chosen.text;
      li.title = chosen.words.join(" ");
      history.appendChild(li);
    }
  }
}
