"""Expose any span model over HTTP: POST /v1/predict with the JSON wire shape.

Useful for demos and for exercising the client against a live endpoint. The
server tokenizes incoming text itself and answers with character-offset spans.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .corpus import tokenize
from .gateway import SpanModel, encode_results


def _make_handler(model: SpanModel, auth_token: str | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args) -> None:  # keep test output quiet
            pass

        def _reply(self, status: int, payload: dict) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_POST(self) -> None:
            if self.path != "/v1/predict":
                self._reply(404, {"error": f"unknown path {self.path}"})
                return
            if auth_token is not None:
                if self.headers.get("Authorization") != f"Bearer {auth_token}":
                    self._reply(401, {"error": "missing or invalid bearer token"})
                    return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                payload = json.loads(self.rfile.read(length))
                items = payload["items"]
                k = int(payload["top_k"])
                if not isinstance(items, list) or not items or k < 1:
                    raise ValueError("items must be a nonempty list and top_k >= 1")
                pairs = [
                    (tokenize(item["question"]), tokenize(item["context"]))
                    for item in items
                ]
            except (ValueError, KeyError, TypeError) as exc:
                self._reply(400, {"error": f"bad request: {exc}"})
                return
            try:
                dists = model.predict_batch(pairs, k)
                contexts = [c for _q, c in pairs]
                self._reply(200, encode_results(dists, contexts))
            except Exception as exc:  # surface model failures as 500s
                self._reply(500, {"error": str(exc)})

    return Handler


@dataclass
class ServerHandle:
    """A running model server; stop() shuts it down and joins the thread."""

    server: ThreadingHTTPServer
    thread: threading.Thread

    @property
    def base_url(self) -> str:
        host, port = self.server.server_address[:2]
        return f"http://{host}:{port}"

    def stop(self) -> None:
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)


def start_server(
    model: SpanModel,
    host: str = "127.0.0.1",
    port: int = 0,
    auth_token: str | None = None,
) -> ServerHandle:
    """Serve the model on a background thread; port 0 picks a free one."""
    server = ThreadingHTTPServer((host, port), _make_handler(model, auth_token))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return ServerHandle(server=server, thread=thread)
