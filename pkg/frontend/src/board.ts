// The board is a pure projection of one GET /sessions/{id} payload. It never
// computes an element, a reply, or a verdict; it only rearranges what the
// service sent into the shape the view wants.

import { Transcript, FragmentEntry, Report, parseTranscript } from './schema.js';
import { ElementNode, parseElementText, isStandardText } from './terms.js';

export interface PlayedPair {
  label: string;
  left: string;
  right: string;
  report: Report | null;
}

export interface BoardModel {
  n: number;
  w: string;
  a0: string;
  b0: string;
  roundsPlayed: number;
  roundsLeft: number;
  // row i holds the i-th played pair, anchors first
  pairs: PlayedPair[];
  // parsed display trees for every distinct nonstandard element on the board
  trees: Map<string, ElementNode>;
  fragment: FragmentEntry[];
  verdict: Report | null;
}

export function buildBoard(doc: unknown): BoardModel {
  const t: Transcript = parseTranscript(doc);
  const pairs: PlayedPair[] = [
    { label: 'anchor', left: t.w, right: t.w, report: null },
    { label: 'challenge', left: t.a0, right: t.b0, report: null },
  ];
  t.rounds.forEach((round, i) => {
    pairs.push({
      label: `round ${i + 1}`,
      left: round.side === 'left' ? round.move : round.reply,
      right: round.side === 'left' ? round.reply : round.move,
      report: round.fragmentReport,
    });
  });

  const trees = new Map<string, ElementNode>();
  for (const pair of pairs) {
    for (const text of [pair.left, pair.right]) {
      if (!trees.has(text) && !isStandardText(text)) {
        trees.set(text, parseElementText(text));
      }
    }
  }

  return {
    n: t.n,
    w: t.w,
    a0: t.a0,
    b0: t.b0,
    roundsPlayed: t.rounds.length,
    roundsLeft: t.n - t.rounds.length,
    pairs,
    trees,
    fragment: t.fragment,
    verdict: t.verdict,
  };
}

// Every element string the board will display, in display order. Tests use
// this to pin down that nothing on the board was locally invented.
export function boardElementTexts(model: BoardModel): string[] {
  const out: string[] = [];
  for (const pair of model.pairs) {
    out.push(pair.left, pair.right);
  }
  for (const entry of model.fragment) {
    out.push(entry.base, entry.image);
  }
  return out;
}
