// Keywords are edited as one ";"-separated line per category, matching the
// GraphML descriptor encoding: "\;" is a literal semicolon, "\\" a literal
// backslash, and blank segments are dropped.

export function splitKeywords(text: string): string[] {
  const segments: string[] = [];
  let current = "";
  let escaped = false;
  for (const ch of text) {
    if (escaped) {
      current += ch;
      escaped = false;
    } else if (ch === "\\") {
      escaped = true;
    } else if (ch === ";") {
      segments.push(current);
      current = "";
    } else {
      current += ch;
    }
  }
  if (escaped) current += "\\";
  segments.push(current);
  return segments.map((segment) => segment.trim()).filter((segment) => segment.length > 0);
}

export function joinKeywords(keywords: string[]): string {
  return keywords
    .map((keyword) => keyword.replace(/\\/g, "\\\\").replace(/;/g, "\\;"))
    .join("; ");
}
