// Payloads captured verbatim from the server's JSON API over the tiny
// bundled release, so tests exercise exactly what the wire delivers.

import type { NeighborhoodDoc, SearchDoc } from "../src/types.js";

export const chronicDisease: NeighborhoodDoc = {
  concept: {
    id: "1000041",
    preferredTerm: "Chronic disease",
    fsn: "Chronic disease",
    active: true,
  },
  outbound: [
    {
      relationshipId: "3000031",
      typeId: "1000081",
      typeTerm: "Is a",
      targetId: "1000031",
      targetTerm: "Disease",
      group: 0,
      isHierarchy: true,
    },
  ],
  inbound: [
    {
      relationshipId: "3000051",
      typeId: "1000081",
      typeTerm: "Is a",
      sourceId: "1000091",
      sourceTerm: "Chronic lung disease",
      group: 0,
      isHierarchy: true,
    },
  ],
};

export const chronicSearch: SearchDoc = {
  query: "chronic",
  hits: [
    {
      conceptId: "1000041",
      matchedTerm: "Chronic disease",
      preferredTerm: "Chronic disease",
      rank: 1,
    },
    {
      conceptId: "1000091",
      matchedTerm: "Chronic lung disease",
      preferredTerm: "Chronic lung disease",
      rank: 1,
    },
  ],
};
