// Move construction. The builder emits element-grammar text and refuses
// anything the grammar or the game would reject, so the submit button never
// sends a move that can only bounce with a 400.

import { isStandardText } from './terms.js';

export type MoveDraft =
  | { kind: 'natural'; value: string }
  | { kind: 'leaf'; index: string; level: string }
  | { kind: 'pair'; first: string; second: string }
  | { kind: 'rwrap'; level: string; body: string };

export type BuildResult =
  | { ok: true; text: string }
  | { ok: false; message: string };

const NATURAL = /^\d+$/;
const INTEGER = /^-?\d+$/;

function blocked(message: string): BuildResult {
  return { ok: false, message };
}

function pickedTerm(text: string, played: string[], what: string): BuildResult | null {
  if (!played.includes(text)) {
    return blocked(`${what} must be one of the played elements`);
  }
  if (isStandardText(text)) {
    return blocked(`${what} must be a tree element, not a natural`);
  }
  return null;
}

export function buildMoveExpression(draft: MoveDraft, played: string[]): BuildResult {
  switch (draft.kind) {
    case 'natural': {
      const v = draft.value.trim();
      if (!NATURAL.test(v)) {
        return blocked('a standard element is a plain natural like 0 or 7');
      }
      return { ok: true, text: v };
    }
    case 'leaf': {
      const index = draft.index.trim();
      const level = draft.level.trim();
      if (!NATURAL.test(index)) {
        return blocked('leaf index must be a natural (negative indices are not in the grammar)');
      }
      if (!INTEGER.test(level)) {
        return blocked('leaf level must be an integer');
      }
      return { ok: true, text: `d(${index},${level})` };
    }
    case 'pair': {
      const bad = pickedTerm(draft.first, played, 'the first component')
        ?? pickedTerm(draft.second, played, 'the second component');
      if (bad) {
        return bad;
      }
      return { ok: true, text: `p(${draft.first},${draft.second})` };
    }
    case 'rwrap': {
      const level = draft.level.trim();
      if (!INTEGER.test(level)) {
        return blocked('wrap level must be an integer');
      }
      const bad = pickedTerm(draft.body, played, 'the wrapped element');
      if (bad) {
        return bad;
      }
      return { ok: true, text: `r(${level},${draft.body})` };
    }
  }
}
