import { ApiClient } from "./api";
import { createApp } from "./app";
import "./style.css";

const root = document.getElementById("app");
if (root) {
  void createApp(root, new ApiClient());
}
