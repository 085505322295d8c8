// Student portal: enter a name under a class code, then head into the game.

import { ApiError, registerPlayer } from "./api.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function init(): void {
  const params = new URLSearchParams(window.location.search);
  const code = (params.get("code") ?? "").toUpperCase();
  byId<HTMLElement>("portal-code").textContent = code || "(missing class code)";

  byId<HTMLFormElement>("join-form").addEventListener("submit", async (ev) => {
    ev.preventDefault();
    const message = byId<HTMLElement>("join-message");
    const name = byId<HTMLInputElement>("player-name").value.trim();
    if (!code) {
      message.textContent = "This link is missing its class code; ask your teacher for a new one.";
      return;
    }
    if (!name) {
      message.textContent = "Enter a name first.";
      return;
    }
    try {
      const reg = await registerPlayer(code, name);
      window.location.href = reg.play_url;
    } catch (err) {
      if (err instanceof ApiError && err.code === "DUPLICATE_NAME") {
        message.textContent = `"${name}" is already taken in this class; pick another name.`;
      } else if (err instanceof ApiError && err.code === "UNKNOWN_CLASS") {
        message.textContent = "That class code does not exist; check the link with your teacher.";
      } else {
        message.textContent = "Could not reach the service; try again in a moment.";
      }
    }
  });
}

document.addEventListener("DOMContentLoaded", init);
