import { createChatApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = createChatApp({
    root,
    fetchFn: (input, init) => fetch(input, init),
    storage: window.localStorage,
  });
  void app.start();
}
