// Reads element text from the service into a display tree. This is layout
// parsing only: indices and levels stay strings, nothing is evaluated, and
// every node remembers the exact source slice it came from. The one place
// the UI synthesizes text is the single-step spine unfolding, which is
// marked as such.

export interface LeafNode {
  kind: 'leaf';
  index: string;
  level: string;
  text: string;
  synthesized?: boolean;
}

export interface PairNode {
  kind: 'pair';
  left: TermNode;
  right: TermNode;
  text: string;
  synthesized?: boolean;
}

export interface SpineNode {
  kind: 'rnode';
  level: string;
  body: TermNode;
  text: string;
  synthesized?: boolean;
}

export type TermNode = LeafNode | PairNode | SpineNode;

export type ElementNode = { kind: 'std'; text: string } | TermNode;

export class TermTextError extends Error {
  pos: number;

  constructor(message: string, pos: number) {
    super(`${message} at position ${pos}`);
    this.pos = pos;
  }
}

const NATURAL = /^\d+$/;

export function isStandardText(text: string): boolean {
  return NATURAL.test(text);
}

class Cursor {
  constructor(readonly text: string, public pos = 0) {}

  peek(): string {
    return this.text[this.pos] ?? '';
  }

  expect(ch: string): void {
    if (this.text[this.pos] !== ch) {
      throw new TermTextError(`expected "${ch}"`, this.pos);
    }
    this.pos += 1;
  }

  takeWhile(re: RegExp): string {
    const start = this.pos;
    while (this.pos < this.text.length && re.test(this.text[this.pos]!)) {
      this.pos += 1;
    }
    if (this.pos === start) {
      throw new TermTextError('expected digits', this.pos);
    }
    return this.text.slice(start, this.pos);
  }
}

function parseLevel(c: Cursor): string {
  const start = c.pos;
  if (c.peek() === '-') {
    c.pos += 1;
  }
  c.takeWhile(/\d/);
  return c.text.slice(start, c.pos);
}

// index ::= nat | rho(nat,nat) | rho(nat,nat)+nat | rho(nat,nat)-nat
function parseIndex(c: Cursor): string {
  const start = c.pos;
  if (c.text.startsWith('rho(', c.pos)) {
    c.pos += 4;
    c.takeWhile(/\d/);
    c.expect(',');
    c.takeWhile(/\d/);
    c.expect(')');
    if (c.peek() === '+' || c.peek() === '-') {
      c.pos += 1;
      c.takeWhile(/\d/);
    }
  } else {
    c.takeWhile(/\d/);
  }
  return c.text.slice(start, c.pos);
}

function parseTermAt(c: Cursor): TermNode {
  const start = c.pos;
  const head = c.peek();
  if (head === 'd') {
    c.pos += 1;
    c.expect('(');
    const index = parseIndex(c);
    c.expect(',');
    const level = parseLevel(c);
    c.expect(')');
    return { kind: 'leaf', index, level, text: c.text.slice(start, c.pos) };
  }
  if (head === 'p') {
    c.pos += 1;
    c.expect('(');
    const left = parseTermAt(c);
    c.expect(',');
    const right = parseTermAt(c);
    c.expect(')');
    return { kind: 'pair', left, right, text: c.text.slice(start, c.pos) };
  }
  if (head === 'r') {
    c.pos += 1;
    c.expect('(');
    const level = parseLevel(c);
    c.expect(',');
    const body = parseTermAt(c);
    c.expect(')');
    return { kind: 'rnode', level, body, text: c.text.slice(start, c.pos) };
  }
  throw new TermTextError('expected d, p, or r', c.pos);
}

export function parseElementText(text: string): ElementNode {
  if (isStandardText(text)) {
    return { kind: 'std', text };
  }
  const c = new Cursor(text);
  const node = parseTermAt(c);
  if (c.pos !== text.length) {
    throw new TermTextError('trailing input', c.pos);
  }
  return node;
}

// One spine step: r(m, b) opens to the pair <r(m-1, b), b>. The body keeps
// its source slice; only the outer shell is synthesized.
export function unfoldOnce(node: SpineNode): PairNode {
  const lower = String(Number(node.level) - 1);
  const head: SpineNode = {
    kind: 'rnode',
    level: lower,
    body: node.body,
    text: `r(${lower},${node.body.text})`,
    synthesized: true,
  };
  return {
    kind: 'pair',
    left: head,
    right: node.body,
    text: `p(${head.text},${node.body.text})`,
    synthesized: true,
  };
}
