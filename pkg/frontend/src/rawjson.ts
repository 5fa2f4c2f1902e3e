/**
 * Raw-lexeme extraction from JSON text.
 *
 * The console never reformats a number it shows: every displayed
 * numeric string is the exact byte sequence the service emitted.
 * JSON.parse would lose that (the service writes 2.0, JavaScript
 * re-stringifies it as 2), so values destined for display are sliced
 * straight out of the response body.
 */

export type JsonPath = (string | number)[];

class Scanner {
  constructor(private text: string, public pos = 0) {}

  peek(): string {
    return this.text[this.pos];
  }

  skipWhitespace(): void {
    while (" \t\n\r".includes(this.text[this.pos])) this.pos += 1;
  }

  skipString(): void {
    this.expect('"');
    while (this.text[this.pos] !== '"') {
      if (this.text[this.pos] === "\\") this.pos += 1;
      this.pos += 1;
      if (this.pos >= this.text.length) throw new Error("unterminated string");
    }
    this.pos += 1;
  }

  readString(): string {
    const start = this.pos;
    this.skipString();
    return JSON.parse(this.text.slice(start, this.pos)) as string;
  }

  expect(char: string): void {
    if (this.text[this.pos] !== char) {
      throw new Error(`expected '${char}' at offset ${this.pos}`);
    }
    this.pos += 1;
  }

  skipValue(): void {
    this.skipWhitespace();
    const c = this.peek();
    if (c === '"') {
      this.skipString();
    } else if (c === "{") {
      this.pos += 1;
      this.skipWhitespace();
      if (this.peek() === "}") {
        this.pos += 1;
        return;
      }
      for (;;) {
        this.skipWhitespace();
        this.skipString();
        this.skipWhitespace();
        this.expect(":");
        this.skipValue();
        this.skipWhitespace();
        if (this.peek() === ",") {
          this.pos += 1;
          continue;
        }
        this.expect("}");
        return;
      }
    } else if (c === "[") {
      this.pos += 1;
      this.skipWhitespace();
      if (this.peek() === "]") {
        this.pos += 1;
        return;
      }
      for (;;) {
        this.skipValue();
        this.skipWhitespace();
        if (this.peek() === ",") {
          this.pos += 1;
          continue;
        }
        this.expect("]");
        return;
      }
    } else {
      // number, true, false, null
      while (this.pos < this.text.length && !",]}\n\r\t ".includes(this.text[this.pos])) {
        this.pos += 1;
      }
    }
  }
}

/** The exact source slice of the value at `path` inside `text`. */
export function rawAt(text: string, path: JsonPath): string {
  const scanner = new Scanner(text);
  for (const segment of path) {
    scanner.skipWhitespace();
    if (typeof segment === "string") {
      scanner.expect("{");
      let found = false;
      for (;;) {
        scanner.skipWhitespace();
        if (scanner.peek() === "}") break;
        const key = scanner.readString();
        scanner.skipWhitespace();
        scanner.expect(":");
        if (key === segment) {
          found = true;
          break;
        }
        scanner.skipValue();
        scanner.skipWhitespace();
        if (scanner.peek() === ",") scanner.pos += 1;
      }
      if (!found) throw new Error(`key '${segment}' not found`);
    } else {
      scanner.expect("[");
      for (let skip = 0; skip < segment; skip += 1) {
        scanner.skipValue();
        scanner.skipWhitespace();
        scanner.expect(",");
      }
    }
  }
  scanner.skipWhitespace();
  const start = scanner.pos;
  scanner.skipValue();
  return text.slice(start, scanner.pos).trim();
}

/** rawAt for strings, with the quotes stripped and escapes resolved. */
export function stringAt(text: string, path: JsonPath): string {
  return JSON.parse(rawAt(text, path)) as string;
}
