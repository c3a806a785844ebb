// Transcript and session wire types, plus the defensive parsing the board
// needs before it will render anything. The service is trusted to compute;
// the browser only checks shapes.

export interface Violation {
  clause: string;
  witness: string;
}

export interface Report {
  ok: boolean;
  violations: Violation[];
}

export interface FragmentEntry {
  base: string;
  image: string;
}

export interface RoundRecord {
  side: 'left' | 'right';
  move: string;
  reply: string;
  fragmentReport: Report;
  fragment: FragmentEntry[];
}

export interface Transcript {
  n: number;
  w: string;
  a0: string;
  b0: string;
  rounds: RoundRecord[];
  fragment: FragmentEntry[];
  verdict: Report | null;
}

export interface SessionDescriptor {
  id: string;
  n: number;
  w: string;
  a0: string;
  b0: string;
}

export interface SessionRow {
  id: string;
  n: number;
  w: string;
  createdAt: string;
  status: 'awaiting-forall' | 'finished';
}

export interface MoveReply {
  round: number;
  side: 'left' | 'right';
  move: string;
  reply: string;
  fragmentReport: Report;
  done: boolean;
  verdict: Report | null;
}

export class SchemaMismatch extends Error {}

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === 'object' && x !== null && !Array.isArray(x);
}

function asReport(x: unknown, where: string): Report {
  if (!isRecord(x) || typeof x.ok !== 'boolean' || !Array.isArray(x.violations)) {
    throw new SchemaMismatch(`${where}: expected {ok, violations}`);
  }
  const violations = x.violations.map((v, i) => {
    if (!isRecord(v) || typeof v.clause !== 'string' || typeof v.witness !== 'string') {
      throw new SchemaMismatch(`${where}.violations[${i}]: expected {clause, witness}`);
    }
    return { clause: v.clause, witness: v.witness };
  });
  return { ok: x.ok, violations };
}

function asFragment(x: unknown, where: string): FragmentEntry[] {
  if (!Array.isArray(x)) {
    throw new SchemaMismatch(`${where}: expected an entry list`);
  }
  return x.map((e, i) => {
    if (!isRecord(e) || typeof e.base !== 'string' || typeof e.image !== 'string') {
      throw new SchemaMismatch(`${where}[${i}]: expected {base, image}`);
    }
    return { base: e.base, image: e.image };
  });
}

export function parseTranscript(doc: unknown): Transcript {
  if (!isRecord(doc)) {
    throw new SchemaMismatch('transcript: expected an object');
  }
  const { n, w, a0, b0 } = doc;
  if (typeof n !== 'number' || !Number.isInteger(n) || n < 0) {
    throw new SchemaMismatch('transcript.n: expected a natural');
  }
  if (typeof w !== 'string' || typeof a0 !== 'string' || typeof b0 !== 'string') {
    throw new SchemaMismatch('transcript: w, a0, b0 must be element text');
  }
  if (!Array.isArray(doc.rounds)) {
    throw new SchemaMismatch('transcript.rounds: expected a list');
  }
  const rounds = doc.rounds.map((r, i): RoundRecord => {
    if (!isRecord(r)) {
      throw new SchemaMismatch(`rounds[${i}]: expected an object`);
    }
    const side = r.side;
    if (side !== 'left' && side !== 'right') {
      throw new SchemaMismatch(`rounds[${i}].side: expected left or right`);
    }
    if (typeof r.move !== 'string' || typeof r.reply !== 'string') {
      throw new SchemaMismatch(`rounds[${i}]: move and reply must be element text`);
    }
    return {
      side,
      move: r.move,
      reply: r.reply,
      fragmentReport: asReport(r.fragmentReport, `rounds[${i}].fragmentReport`),
      fragment: asFragment(r.fragment, `rounds[${i}].fragment`),
    };
  });
  if (rounds.length > n) {
    throw new SchemaMismatch(`transcript: ${rounds.length} rounds in an n=${n} game`);
  }
  const verdict = doc.verdict === null ? null : asReport(doc.verdict, 'transcript.verdict');
  return {
    n,
    w,
    a0,
    b0,
    rounds,
    fragment: asFragment(doc.fragment, 'transcript.fragment'),
    verdict,
  };
}
