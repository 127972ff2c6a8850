// Commander display wiring: chat pane, live map, latest photo.

import { GatewayConnection } from "./connection.js";
import type { GatewayRecord } from "./protocol.js";
import { drawMap, drawPhoto } from "./render.js";
import { applyRecord, initialState, ViewState, withConnection } from "./state.js";

const chatPane = document.getElementById("chat") as HTMLDivElement;
const input = document.getElementById("say") as HTMLInputElement;
const form = document.getElementById("say-form") as HTMLFormElement;
const statusPill = document.getElementById("status") as HTMLSpanElement;
const mapCanvas = document.getElementById("map") as HTMLCanvasElement;
const photoCanvas = document.getElementById("photo") as HTMLCanvasElement;
const photoLabel = document.getElementById("photo-label") as HTMLDivElement;

let state: ViewState = initialState;
let renderedPhoto: string | null = null;

function render(): void {
  statusPill.textContent = state.connection;
  statusPill.dataset.state = state.connection;
  input.disabled = state.connection !== "connected";

  chatPane.replaceChildren(...state.chat.map((turn) => {
    const bubble = document.createElement("div");
    bubble.className = `turn ${turn.who} kind-${turn.kind}`;
    bubble.textContent = turn.text;
    return bubble;
  }));
  chatPane.scrollTop = chatPane.scrollHeight;

  drawMap(mapCanvas, state.grid, state.pose);

  if (state.photo && state.photo.ref !== renderedPhoto) {
    renderedPhoto = state.photo.ref;
    photoLabel.textContent = state.photo.ref;
    drawPhoto(photoCanvas, `/photos/${state.photo.ref}`)
      .catch((err) => console.warn("photo render failed:", err));
  }
}

const wsUrl = `${location.protocol === "https:" ? "wss" : "ws"}://${location.host}/ws`;
const connection = new GatewayConnection(
  wsUrl,
  (record: GatewayRecord) => {
    state = applyRecord(state, record);
    render();
  },
  (status) => {
    state = withConnection(state, status);
    render();
  },
);

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const text = input.value.trim();
  if (text && connection.say(text)) {
    input.value = "";
  }
});

connection.connect();
render();
