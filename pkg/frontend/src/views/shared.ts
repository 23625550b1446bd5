/** Escaping helpers for HTML-string renderers. */

export function escapeHtml(value: string): string {
  return value
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

export function escapeAttr(value: string): string {
  return escapeHtml(value).replaceAll('"', "&quot;");
}

export function notice(text: string | null): string {
  if (!text) return "";
  return `<p class="notice" role="alert">${escapeHtml(text)}</p>`;
}
