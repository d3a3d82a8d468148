// Application shell: hash routing, screen swapping, and stale-response
// discarding. Routes are deep-linkable:
//   #/concept/<id>   concept neighborhood
//   #/diagram/<id>   rendered diagram (or notice when the server has no renderer)
//   #/search/<text>  search results
//   (empty)          search entry screen

import { ApiError, diagramDotUrl, fetchDiagramSvg, fetchNeighborhood, fetchSearch } from "./api.js";
import {
  renderConceptScreen,
  renderDiagramView,
  renderErrorBanner,
  renderSearchResults,
} from "./render.js";

type Route =
  | { kind: "home" }
  | { kind: "concept"; id: string }
  | { kind: "diagram"; id: string }
  | { kind: "search"; query: string };

export function parseRoute(hash: string): Route {
  const concept = hash.match(/^#\/concept\/([1-9][0-9]{5,17})$/);
  if (concept) return { kind: "concept", id: concept[1] };
  const diagram = hash.match(/^#\/diagram\/([1-9][0-9]{5,17})$/);
  if (diagram) return { kind: "diagram", id: diagram[1] };
  const search = hash.match(/^#\/search\/(.+)$/);
  if (search) return { kind: "search", query: decodeURIComponent(search[1]) };
  return { kind: "home" };
}

export class App {
  private fetchSeq = 0;

  constructor(private readonly root: HTMLElement) {
    window.addEventListener("hashchange", () => void this.route());
  }

  start(): Promise<void> {
    return this.route();
  }

  private navigate = (conceptId: string): void => {
    window.location.hash = `#/concept/${conceptId}`;
  };

  private show(...nodes: HTMLElement[]): void {
    this.root.replaceChildren(this.searchBar(), ...nodes);
  }

  private searchBar(): HTMLElement {
    const form = document.createElement("form");
    form.className = "search-bar";
    const input = document.createElement("input");
    input.type = "search";
    input.name = "q";
    input.placeholder = "Search terms…";
    const route = parseRoute(window.location.hash);
    if (route.kind === "search") input.value = route.query;
    form.appendChild(input);
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Search";
    form.appendChild(submit);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const q = input.value.trim();
      if (q) window.location.hash = `#/search/${encodeURIComponent(q)}`;
    });
    return form;
  }

  async route(): Promise<void> {
    const seq = ++this.fetchSeq;
    const route = parseRoute(window.location.hash);
    try {
      switch (route.kind) {
        case "home": {
          const hint = document.createElement("p");
          hint.className = "hint";
          hint.textContent = "Search for a term to start browsing.";
          this.show(hint);
          return;
        }
        case "concept": {
          const doc = await fetchNeighborhood(route.id);
          if (seq !== this.fetchSeq) return; // superseded by a newer navigation
          const screen = renderConceptScreen(doc, this.navigate);
          const diagramLink = document.createElement("a");
          diagramLink.className = "diagram-link";
          diagramLink.href = `#/diagram/${route.id}`;
          diagramLink.textContent = "Diagram";
          this.show(screen, diagramLink);
          return;
        }
        case "diagram": {
          const svg = await fetchDiagramSvg(route.id);
          if (seq !== this.fetchSeq) return;
          const back = document.createElement("a");
          back.className = "back-link";
          back.href = `#/concept/${route.id}`;
          back.textContent = "Back to concept";
          this.show(renderDiagramView(route.id, svg, diagramDotUrl(route.id)), back);
          return;
        }
        case "search": {
          const doc = await fetchSearch(route.query);
          if (seq !== this.fetchSeq) return;
          this.show(renderSearchResults(doc, this.navigate));
          return;
        }
      }
    } catch (err) {
      if (seq !== this.fetchSeq) return;
      const message = err instanceof ApiError ? err.message : "Request failed";
      this.show(renderErrorBanner(message, () => void this.route()));
    }
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (root) void new App(root).start();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot();
}
