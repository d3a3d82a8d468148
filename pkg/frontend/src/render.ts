// Presentation-only DOM builders. Payloads render as delivered: no
// re-ranking, filtering, or graph logic happens on the client.

import type { NeighborhoodDoc, SearchDoc } from "./types.js";
import { attachTooltip } from "./tooltip.js";

export type Navigate = (conceptId: string) => void;

function conceptControl(
  id: string,
  term: string,
  className: string,
  navigate: Navigate,
  tooltipLines: string[],
): HTMLButtonElement {
  const control = document.createElement("button");
  control.type = "button";
  control.className = className;
  control.dataset.conceptId = id;
  control.textContent = term;
  control.addEventListener("click", () => navigate(id));
  attachTooltip(control, tooltipLines);
  return control;
}

export function renderConceptScreen(doc: NeighborhoodDoc, navigate: Navigate): HTMLElement {
  const screen = document.createElement("div");
  screen.className = "concept-screen";

  const left = document.createElement("div");
  left.className = "zone zone-inbound";
  for (const edge of doc.inbound) {
    const row = document.createElement("div");
    row.className = edge.isHierarchy ? "edge-row hierarchy" : "edge-row";
    row.appendChild(
      conceptControl(edge.sourceId, edge.sourceTerm, "concept referring", navigate, [
        edge.sourceId,
      ]),
    );
    row.appendChild(
      conceptControl(edge.typeId, edge.typeTerm, "edge-type", navigate, [edge.typeId]),
    );
    left.appendChild(row);
  }

  const center = document.createElement("div");
  center.className = "zone zone-center";
  const current = document.createElement("div");
  current.className = doc.concept.active
    ? "concept current"
    : "concept current inactive";
  current.dataset.conceptId = doc.concept.id;
  current.textContent = doc.concept.preferredTerm;
  attachTooltip(current, [doc.concept.id, doc.concept.fsn]);
  center.appendChild(current);

  const right = document.createElement("div");
  right.className = "zone zone-outbound";
  for (const edge of doc.outbound) {
    const row = document.createElement("div");
    row.className = edge.isHierarchy ? "edge-row hierarchy" : "edge-row";
    row.appendChild(
      conceptControl(edge.typeId, edge.typeTerm, "edge-type", navigate, [edge.typeId]),
    );
    row.appendChild(
      conceptControl(edge.targetId, edge.targetTerm, "concept referred", navigate, [
        edge.targetId,
      ]),
    );
    right.appendChild(row);
  }

  screen.appendChild(left);
  screen.appendChild(center);
  screen.appendChild(right);
  return screen;
}

export function renderSearchResults(doc: SearchDoc, navigate: Navigate): HTMLElement {
  const list = document.createElement("ul");
  list.className = "search-results";
  for (const hit of doc.hits) {
    const item = document.createElement("li");
    const control = conceptControl(hit.conceptId, hit.matchedTerm, "concept hit", navigate, [
      hit.conceptId,
      hit.preferredTerm,
    ]);
    item.appendChild(control);
    if (hit.preferredTerm !== hit.matchedTerm) {
      const preferred = document.createElement("span");
      preferred.className = "preferred";
      preferred.textContent = ` → ${hit.preferredTerm}`;
      item.appendChild(preferred);
    }
    list.appendChild(item);
  }
  if (doc.hits.length === 0) {
    const empty = document.createElement("li");
    empty.className = "empty";
    empty.textContent = `No matches for "${doc.query}"`;
    list.appendChild(empty);
  }
  return list;
}

export function renderDiagramView(
  conceptId: string,
  svgMarkup: string | null,
  dotUrl: string,
): HTMLElement {
  const view = document.createElement("div");
  view.className = "diagram-view";
  if (svgMarkup === null) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent = "Renderer not configured on the server; DOT text is still available.";
    view.appendChild(notice);
  } else {
    const host = document.createElement("div");
    host.className = "diagram-svg";
    host.innerHTML = svgMarkup;
    view.appendChild(host);
  }
  const download = document.createElement("a");
  download.className = "dot-download";
  download.href = dotUrl;
  download.download = `concept_${conceptId}.dot`;
  download.textContent = "Download DOT";
  view.appendChild(download);
  return view;
}

export function renderErrorBanner(message: string, retry: () => void): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  const text = document.createElement("span");
  text.textContent = message;
  banner.appendChild(text);
  const button = document.createElement("button");
  button.type = "button";
  button.className = "retry";
  button.textContent = "Retry";
  button.addEventListener("click", retry);
  banner.appendChild(button);
  return banner;
}
