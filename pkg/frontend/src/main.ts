import { createChatApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = createChatApp(root);
  void app.refreshHealth();
}
