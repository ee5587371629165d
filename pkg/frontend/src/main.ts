import "./style.css";
import { ServiceClient } from "./api";
import { App } from "./app";

const root = document.querySelector<HTMLElement>("#app");
if (root) {
  const app = new App(root, new ServiceClient());
  void app.start();
}
