// Wire types of the terminology server's JSON API. Ids are strings:
// 18-digit ids overflow JS numbers.

export interface ConceptInfo {
  id: string;
  preferredTerm: string;
  fsn: string;
  active: boolean;
}

export interface OutboundEdge {
  relationshipId: string;
  typeId: string;
  typeTerm: string;
  targetId: string;
  targetTerm: string;
  group: number;
  isHierarchy: boolean;
}

export interface InboundEdge {
  relationshipId: string;
  typeId: string;
  typeTerm: string;
  sourceId: string;
  sourceTerm: string;
  group: number;
  isHierarchy: boolean;
}

export interface NeighborhoodDoc {
  concept: ConceptInfo;
  outbound: OutboundEdge[];
  inbound: InboundEdge[];
}

export interface SearchHit {
  conceptId: string;
  matchedTerm: string;
  preferredTerm: string;
  rank: number;
}

export interface SearchDoc {
  query: string;
  hits: SearchHit[];
}
