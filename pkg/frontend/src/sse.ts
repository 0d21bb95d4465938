// Wall state stream. EventSource reconnects on its own; every push is the
// full document, so a reconnect replays complete state automatically.

import type { WallStateDoc } from "./types.js";

export function connectEvents(
  base: string,
  onDoc: (doc: WallStateDoc) => void,
  onStatus: (connected: boolean) => void,
  token: string | null = null,
): () => void {
  const url = `${base}/api/events${token ? `?token=${encodeURIComponent(token)}` : ""}`;
  const source = new EventSource(url);
  source.addEventListener("wall", (e: MessageEvent) => {
    try {
      onDoc(JSON.parse(e.data) as WallStateDoc);
    } catch {
      // malformed push; the next one replaces it anyway
    }
  });
  source.onopen = () => onStatus(true);
  source.onerror = () => onStatus(false);
  return () => source.close();
}
