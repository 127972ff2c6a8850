// View state as a pure fold of the gateway stream: replaying the same
// records always reproduces the same state, byte for byte.

import type {
  ChatTurn,
  GatewayRecord,
  MapDelta,
  PhotoRef,
  SnapshotBody,
} from "./protocol.js";
import { applyDelta, fromSnapshot, GridRaster } from "./raster.js";

export type ConnectionStatus = "connecting" | "connected" | "reconnecting" | "offline";

export interface ViewState {
  chat: ChatTurn[];
  grid: GridRaster | null;
  pose: [number, number, number] | null;
  photo: PhotoRef | null;
  errors: string[];
  lastSeq: number;
  connection: ConnectionStatus;
}

export const initialState: ViewState = {
  chat: [],
  grid: null,
  pose: null,
  photo: null,
  errors: [],
  lastSeq: 0,
  connection: "connecting",
};

export function applyRecord(state: ViewState, record: GatewayRecord): ViewState {
  // broadcasts still in flight when a snapshot was taken arrive with an
  // older seq; dropping them keeps snapshot resyncs exactly-once
  if (record.type !== "snapshot" && record.type !== "error"
      && record.seq > 0 && record.seq <= state.lastSeq) {
    return state;
  }
  switch (record.type) {
    case "chat":
      return {
        ...state,
        chat: [...state.chat, record.body as ChatTurn],
        lastSeq: record.seq,
      };
    case "map": {
      const delta = record.body as MapDelta;
      return {
        ...state,
        grid: applyDelta(state.grid, delta),
        pose: delta.pose,
        lastSeq: record.seq,
      };
    }
    case "photo":
      return { ...state, photo: record.body as PhotoRef, lastSeq: record.seq };
    case "snapshot": {
      const body = record.body as SnapshotBody;
      return {
        ...state,
        chat: [...body.chat],
        grid: body.grid ? fromSnapshot(body.grid) : null,
        pose: body.pose,
        photo: body.photo,
        lastSeq: record.seq,
      };
    }
    case "error": {
      const message = (record.body as { message?: string }).message ?? "unknown";
      console.warn("gateway error:", message);
      return { ...state, errors: [...state.errors, message] };
    }
    default:
      console.warn("unknown record type", (record as GatewayRecord).type);
      return state;
  }
}

export function withConnection(state: ViewState, connection: ConnectionStatus): ViewState {
  return { ...state, connection };
}

export function replay(records: GatewayRecord[], start: ViewState = initialState): ViewState {
  return records.reduce(applyRecord, start);
}
