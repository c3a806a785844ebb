import { readFileSync } from 'node:fs';

import { describe, expect, it } from 'vitest';

import { SchemaMismatch, parseTranscript } from '../src/schema.js';
import { parseElementText, unfoldOnce } from '../src/terms.js';

const recorded = JSON.parse(
  readFileSync(new URL('./recorded/transcript.json', import.meta.url), 'utf8'),
);

describe('transcript schema', () => {
  it('accepts the recorded transcript', () => {
    const t = parseTranscript(recorded);
    expect(t.n).toBe(3);
    expect(t.rounds).toHaveLength(3);
    expect(t.verdict?.ok).toBe(true);
  });

  it('rejects a transcript with more rounds than n', () => {
    const doc = { ...recorded, n: 1 };
    expect(() => parseTranscript(doc)).toThrow(SchemaMismatch);
  });

  it('rejects missing keys and bad sides', () => {
    const { verdict: _dropped, ...rest } = recorded;
    expect(() => parseTranscript({ ...rest, verdict: undefined })).toThrow(SchemaMismatch);
    const bent = JSON.parse(JSON.stringify(recorded));
    bent.rounds[0].side = 'up';
    expect(() => parseTranscript(bent)).toThrow(SchemaMismatch);
    expect(() => parseTranscript('not even an object')).toThrow(SchemaMismatch);
  });
});

describe('element display parsing', () => {
  it('keeps source slices on every node', () => {
    const node = parseElementText('p(r(2,d(1,0)),d(rho(3,4)+1,0))');
    expect(node.kind).toBe('pair');
    if (node.kind !== 'pair') return;
    expect(node.left.text).toBe('r(2,d(1,0))');
    expect(node.right.text).toBe('d(rho(3,4)+1,0)');
    if (node.right.kind === 'leaf') {
      // the symbolic index is displayed as-is, never evaluated
      expect(node.right.index).toBe('rho(3,4)+1');
    }
  });

  it('unfolds a spine head one step, marking the synthesized shell', () => {
    const node = parseElementText('r(2,d(1,0))');
    expect(node.kind).toBe('rnode');
    if (node.kind !== 'rnode') return;
    const opened = unfoldOnce(node);
    expect(opened.text).toBe('p(r(1,d(1,0)),d(1,0))');
    expect(opened.synthesized).toBe(true);
    expect(opened.left.synthesized).toBe(true);
    // the body keeps its original source slice
    expect(opened.right).toBe(node.body);
    expect(opened.right.synthesized).toBeUndefined();
  });

  it('rejects text outside the grammar', () => {
    expect(() => parseElementText('q(1,2)')).toThrow(/expected d, p, or r/);
    expect(() => parseElementText('d(1,0) ')).toThrow(/trailing/);
  });
});
