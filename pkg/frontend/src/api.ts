// Thin fetch client. Digest authentication is the browser's job: a 401
// with a WWW-Authenticate challenge triggers the native credential
// prompt, so no credential handling lives here.

import type { NeighborhoodDoc, SearchDoc } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    let code = `http_${response.status}`;
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body.error) {
        code = body.error;
        detail = body.detail ?? detail;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, code, detail);
  }
  return response.json() as Promise<T>;
}

export function fetchNeighborhood(conceptId: string): Promise<NeighborhoodDoc> {
  return getJson<NeighborhoodDoc>(`/api/concepts/${encodeURIComponent(conceptId)}`);
}

export function fetchSearch(query: string, limit = 50): Promise<SearchDoc> {
  const q = encodeURIComponent(query);
  return getJson<SearchDoc>(`/api/search?q=${q}&limit=${limit}`);
}

export function diagramDotUrl(conceptId: string): string {
  return `/api/concepts/${encodeURIComponent(conceptId)}/diagram.dot`;
}

export function diagramSvgUrl(conceptId: string): string {
  return `/api/concepts/${encodeURIComponent(conceptId)}/diagram.svg`;
}

export async function fetchDiagramSvg(conceptId: string): Promise<string | null> {
  const response = await fetch(diagramSvgUrl(conceptId));
  if (response.status === 501) {
    return null; // renderer not configured on the server
  }
  if (!response.ok) {
    throw new ApiError(response.status, `http_${response.status}`, response.statusText);
  }
  return response.text();
}
