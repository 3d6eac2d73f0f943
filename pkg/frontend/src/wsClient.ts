// WebSocket transport with reconnect; feeds raw frames into the session.

import { Session } from "./session.js";

export interface ConnectOptions {
  onOpen?(): void;
  onClose?(willRetry: boolean): void;
  retryMs?: number;
  maxRetries?: number;
}

export function serverUrl(): string {
  const params = new URLSearchParams(window.location.search);
  const override = params.get("server");
  if (override) return override;
  const proto = window.location.protocol === "https:" ? "wss:" : "ws:";
  return `${proto}//${window.location.host}/ws`;
}

export function connect(url: string, session: Session,
                        opts: ConnectOptions = {}): () => void {
  let retries = 0;
  let closedByUser = false;
  let ws: WebSocket | null = null;

  const open = () => {
    ws = new WebSocket(url);
    ws.onopen = () => {
      retries = 0;
      opts.onOpen?.();
    };
    ws.onmessage = (ev) => {
      if (typeof ev.data === "string") session.handleRaw(ev.data);
      // binary frames carry tensor blobs; the browser client renders from
      // state messages and ignores them
    };
    ws.onclose = () => {
      const willRetry = !closedByUser && retries < (opts.maxRetries ?? 5);
      opts.onClose?.(willRetry);
      if (willRetry) {
        retries += 1;
        setTimeout(open, opts.retryMs ?? 1500);
      }
    };
    session.attach({
      send: (data) => ws?.send(data),
      close: () => ws?.close(),
    });
  };

  open();
  return () => {
    closedByUser = true;
    ws?.close();
  };
}
