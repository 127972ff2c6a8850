// Gateway stream records: one JSON object per WebSocket text frame.
// The byte-level contract lives in docs/formats.md at the repo root.

export interface GatewayRecord {
  type: "chat" | "map" | "photo" | "snapshot" | "error";
  seq: number;
  body: unknown;
}

export interface ChatTurn {
  who: "commander" | "scout";
  kind: string;
  text: string;
  ref?: string;
}

export interface MapDelta {
  kind: "delta";
  resolution: number;
  origin: [number, number];
  shape: [number, number];
  cells: [number, number, number][];
  pose: [number, number, number];
}

export interface PhotoRef {
  ref: string;
  sidecar: string;
  pose: [number, number, number];
}

export interface GridSnapshot {
  resolution: number;
  origin: [number, number];
  shape: [number, number];
  rows: string[];
}

export interface SnapshotBody {
  chat: ChatTurn[];
  grid: GridSnapshot | null;
  pose: [number, number, number] | null;
  photo: PhotoRef | null;
}

export function parseRecord(raw: string): GatewayRecord | null {
  try {
    const doc = JSON.parse(raw);
    if (doc && typeof doc.type === "string" && typeof doc.seq === "number") {
      return doc as GatewayRecord;
    }
  } catch {
    // fall through
  }
  console.warn("ignoring malformed gateway record", raw.slice(0, 120));
  return null;
}
