// Browser entry point: login form, then the app shell wired to the
// gateway's websocket channel (long-poll when websockets are blocked).

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { EventChannel } from "./events.js";

function mountLogin(root: HTMLElement): void {
  root.textContent = "";
  const form = document.createElement("form");
  form.className = "login";
  form.innerHTML = `
    <h1>djfam</h1>
    <label>Family code <input name="code" autocomplete="off" /></label>
    <label>I am the
      <select name="role">
        <option value="parent">parent</option>
        <option value="child">child</option>
      </select>
    </label>
    <button type="submit">Join</button>
    <p class="login-error" hidden></p>
  `;
  form.onsubmit = async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const api = new ApiClient("");
    try {
      const session = await api.login(String(data.get("code")), String(data.get("role")));
      const app = new App(root, api, session.user_id, session.role);
      const channel = new EventChannel(
        app.handleFrame,
        (cursor, waitS) => api.pollEvents(cursor, waitS),
        typeof WebSocket === "undefined"
          ? null
          : (url) => new WebSocket(url) as unknown as import("./events.js").WebSocketLike,
        (cursor) => {
          const scheme = location.protocol === "https:" ? "wss" : "ws";
          return `${scheme}://${location.host}/v1/events?token=${api.token}&cursor=${cursor}`;
        },
      );
      await app.boot(channel);
    } catch (error) {
      const note = form.querySelector(".login-error") as HTMLElement;
      note.hidden = false;
      note.textContent = error instanceof Error ? error.message : "login failed";
    }
  };
  root.appendChild(form);
}

const rootElement = document.getElementById("app");
if (rootElement) mountLogin(rootElement);
