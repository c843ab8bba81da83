/**
 * DOM wiring: setup form, SVG board, sign chooser, hint overlay. All game
 * numbers come straight from the latest service response via the board
 * model; this file only renders.
 */

import { GameClient, type GameView, type HintPayload, type RoleName, type SignSymbol } from "./api.js";
import { SessionController } from "./controller.js";
import { boardModel, hintText } from "./viewmodel.js";

const BOARD_W = 640;
const BOARD_H = 480;
const SVG_NS = "http://www.w3.org/2000/svg";

const el = {
  form: document.getElementById("setup-form") as HTMLFormElement,
  spec: document.getElementById("spec-input") as HTMLInputElement,
  first: document.getElementById("first-select") as HTMLSelectElement,
  human: document.getElementById("human-select") as HTMLSelectElement,
  error: document.getElementById("error-box") as HTMLDivElement,
  banner: document.getElementById("turn-banner") as HTMLDivElement,
  ticker: document.getElementById("score-ticker") as HTMLDivElement,
  board: document.getElementById("board") as unknown as SVGSVGElement,
  hintButton: document.getElementById("hint-button") as HTMLButtonElement,
  hintBox: document.getElementById("hint-box") as HTMLDivElement,
  chooser: document.getElementById("sign-chooser") as HTMLDivElement,
};

const baseUrl =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8023";
const client = new GameClient(baseUrl);

let lastView: GameView | null = null;
let lastHint: HintPayload | null = null;
let chooserVertex: number | null = null;

const controller = new SessionController(client, {
  onView: (view) => {
    lastView = view;
    if (view.last_move !== undefined) lastHint = null;
    render();
  },
  onThinking: (thinking) => {
    el.banner.textContent = thinking ? "Engine thinking" : el.banner.textContent;
    el.banner.classList.toggle("thinking", thinking);
  },
  onError: (message) => {
    el.error.textContent = message;
    el.error.hidden = false;
  },
});

function clearError() {
  el.error.hidden = true;
  el.error.textContent = "";
}

function render() {
  if (lastView === null) return;
  const model = boardModel(lastView, BOARD_W, BOARD_H, lastHint);

  el.banner.textContent = model.banner;
  el.banner.classList.toggle("finished", model.finished);
  el.ticker.textContent = `banked ${model.banked}`;
  if (model.deltaFlash !== null && model.deltaFlash !== "+0") {
    el.ticker.textContent += ` (${model.deltaFlash})`;
  }
  el.hintButton.disabled = model.finished;

  el.board.replaceChildren();
  for (const edge of model.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.from.x));
    line.setAttribute("y1", String(edge.from.y));
    line.setAttribute("x2", String(edge.to.x));
    line.setAttribute("y2", String(edge.to.y));
    line.classList.add("edge");
    if (edge.score !== null) {
      line.classList.add(edge.score > 0 ? "positive" : "negative");
      if (edge.fresh) line.classList.add("fresh");
    }
    el.board.appendChild(line);
    if (edge.score !== null) {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String((edge.from.x + edge.to.x) / 2));
      label.setAttribute("y", String((edge.from.y + edge.to.y) / 2 - 4));
      label.classList.add("edge-score");
      label.textContent = edge.score > 0 ? `+${edge.score}` : String(edge.score);
      el.board.appendChild(label);
    }
  }
  for (const vertex of model.vertices) {
    const group = document.createElementNS(SVG_NS, "g");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(vertex.x));
    circle.setAttribute("cy", String(vertex.y));
    circle.setAttribute("r", "16");
    circle.classList.add("vertex");
    if (vertex.cell === "+") circle.classList.add("plus");
    if (vertex.cell === "-") circle.classList.add("minus");
    if (vertex.clickable) circle.classList.add("clickable");
    if (vertex.highlighted) circle.classList.add("hinted");
    group.appendChild(circle);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(vertex.x));
    text.setAttribute("y", String(vertex.y + 5));
    text.classList.add("vertex-label");
    text.textContent = vertex.cell ?? (vertex.suggestedSign ?? String(vertex.index));
    group.appendChild(text);
    if (vertex.clickable) {
      group.addEventListener("click", (event) => {
        event.stopPropagation();
        openChooser(vertex.index, vertex.x, vertex.y);
      });
    }
    el.board.appendChild(group);
  }
}

function openChooser(vertex: number, x: number, y: number) {
  chooserVertex = vertex;
  el.chooser.hidden = false;
  const rect = el.board.getBoundingClientRect();
  el.chooser.style.left = `${rect.left + window.scrollX + x - 36}px`;
  el.chooser.style.top = `${rect.top + window.scrollY + y + 22}px`;
}

function closeChooser() {
  chooserVertex = null;
  el.chooser.hidden = true;
}

for (const button of el.chooser.querySelectorAll("button")) {
  button.addEventListener("click", async () => {
    if (chooserVertex === null) return;
    const sign = button.dataset.sign as SignSymbol;
    const vertex = chooserVertex;
    closeChooser();
    clearError();
    lastHint = null;
    await controller.playMove(vertex, sign);
  });
}

document.body.addEventListener("click", () => closeChooser());

el.form.addEventListener("submit", async (event) => {
  event.preventDefault();
  clearError();
  closeChooser();
  lastHint = null;
  el.hintBox.hidden = true;
  await controller.start({
    graph: el.spec.value.trim(),
    first_role: el.first.value as RoleName,
    human_role: el.human.value as RoleName,
  });
});

el.hintButton.addEventListener("click", async () => {
  clearError();
  const hint = await controller.hint();
  if (hint === null) return;
  lastHint = hint;
  el.hintBox.textContent = hintText(hint);
  el.hintBox.hidden = false;
  render();
});
