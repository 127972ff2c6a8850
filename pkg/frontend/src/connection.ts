// WebSocket session with reconnect/backoff. On every (re)connect the
// client asks for a snapshot, so a dropped connection resyncs the full
// grid and chat history instead of folding from a gap.

import { parseRecord, GatewayRecord } from "./protocol.js";
import type { ConnectionStatus } from "./state.js";

const BACKOFF_BASE_MS = 500;
const BACKOFF_CAP_MS = 8000;

export class GatewayConnection {
  private ws: WebSocket | null = null;
  private attempts = 0;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly onRecord: (record: GatewayRecord) => void,
    private readonly onStatus: (status: ConnectionStatus) => void,
  ) {}

  connect(): void {
    if (this.closed) return;
    this.onStatus(this.attempts === 0 ? "connecting" : "reconnecting");
    const ws = new WebSocket(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.attempts = 0;
      this.onStatus("connected");
      ws.send(JSON.stringify({ type: "snapshot" }));
    };
    ws.onmessage = (event) => {
      const record = parseRecord(String(event.data));
      if (record) this.onRecord(record);
    };
    ws.onclose = () => this.scheduleReconnect();
    ws.onerror = () => ws.close();
  }

  say(text: string): boolean {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify({ type: "say", body: text }));
      return true;
    }
    return false;
  }

  requestSnapshot(): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify({ type: "snapshot" }));
    }
  }

  close(): void {
    this.closed = true;
    this.ws?.close();
  }

  private scheduleReconnect(): void {
    if (this.closed) return;
    this.onStatus("reconnecting");
    const delay = Math.min(BACKOFF_CAP_MS, BACKOFF_BASE_MS * 2 ** this.attempts);
    this.attempts += 1;
    setTimeout(() => this.connect(), delay);
  }
}
