// Shared hover tooltip. The inspected id and FSN are read from data
// attributes already present in the DOM, so hovering costs no request.

let tooltip: HTMLDivElement | null = null;

function ensureTooltip(): HTMLDivElement {
  if (!tooltip) {
    tooltip = document.createElement("div");
    tooltip.className = "tooltip";
    tooltip.setAttribute("role", "tooltip");
    tooltip.hidden = true;
    document.body.appendChild(tooltip);
  }
  return tooltip;
}

export function attachTooltip(element: HTMLElement, lines: string[]): void {
  element.addEventListener("mouseenter", () => {
    const tip = ensureTooltip();
    tip.textContent = "";
    for (const line of lines) {
      const row = document.createElement("div");
      row.textContent = line;
      tip.appendChild(row);
    }
    const rect = element.getBoundingClientRect();
    tip.style.left = `${rect.left + window.scrollX}px`;
    tip.style.top = `${rect.bottom + window.scrollY + 4}px`;
    tip.hidden = false;
  });
  element.addEventListener("mouseleave", () => {
    ensureTooltip().hidden = true;
  });
}

export function activeTooltip(): HTMLDivElement | null {
  return tooltip && !tooltip.hidden ? tooltip : null;
}
