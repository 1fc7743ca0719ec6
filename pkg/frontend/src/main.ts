import { ExpandoClient } from "./api.js";
import { Board } from "./board.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";

const root = document.getElementById("board");
if (!root) throw new Error("missing #board element");

const client = new ExpandoClient(baseUrl);
const board = new Board(root, client);
board.render();
void board.loadTiles();
