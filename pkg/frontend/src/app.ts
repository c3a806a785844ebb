// Browser shell. Holds no game state of its own: after every accepted move
// it refetches the session transcript and re-renders the whole board from
// that payload (optimistic updates are deliberately off).

import { buildBoard } from './board.js';
import { BuildResult, MoveDraft, buildMoveExpression } from './builder.js';
import { ServiceClient, ServiceError } from './client.js';
import { renderBoard, renderSchemaMismatch } from './render.js';
import { SchemaMismatch } from './schema.js';
import { TermTextError } from './terms.js';

interface ViewState {
  client: ServiceClient;
  sessionId: string | null;
  lastPayload: string | null;
  expanded: Set<string>;
  playedTexts: string[];
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id} in the page shell`);
  }
  return node as T;
}

function setStatus(text: string, isError = false): void {
  const status = el<HTMLElement>('status');
  status.textContent = text;
  status.className = isError ? 'status error' : 'status';
}

function redraw(state: ViewState): void {
  const host = el<HTMLElement>('board');
  if (state.lastPayload === null) {
    host.innerHTML = '<p class="empty">no session yet</p>';
    return;
  }
  let doc: unknown;
  try {
    doc = JSON.parse(state.lastPayload);
  } catch (err) {
    host.innerHTML = renderSchemaMismatch(String(err));
    return;
  }
  try {
    const model = buildBoard(doc);
    state.playedTexts = model.pairs.flatMap(p => [p.left, p.right]);
    host.innerHTML = renderBoard(model, state.expanded);
  } catch (err) {
    if (err instanceof SchemaMismatch || err instanceof TermTextError) {
      host.innerHTML = renderSchemaMismatch(err.message);
      return;
    }
    throw err;
  }
}

async function refresh(state: ViewState): Promise<void> {
  if (state.sessionId === null) {
    return;
  }
  state.lastPayload = await state.client.getTranscriptText(state.sessionId);
  redraw(state);
}

function readDraft(): MoveDraft {
  const kind = el<HTMLSelectElement>('move-kind').value;
  switch (kind) {
    case 'natural':
      return { kind: 'natural', value: el<HTMLInputElement>('nat-value').value };
    case 'leaf':
      return {
        kind: 'leaf',
        index: el<HTMLInputElement>('leaf-index').value,
        level: el<HTMLInputElement>('leaf-level').value,
      };
    case 'pair':
      return {
        kind: 'pair',
        first: el<HTMLSelectElement>('pair-first').value,
        second: el<HTMLSelectElement>('pair-second').value,
      };
    default:
      return {
        kind: 'rwrap',
        level: el<HTMLInputElement>('wrap-level').value,
        body: el<HTMLSelectElement>('wrap-body').value,
      };
  }
}

function syncPickers(state: ViewState): void {
  const options = state.playedTexts
    .filter((text, i) => state.playedTexts.indexOf(text) === i)
    .map(text => `<option>${text.replace(/</g, '&lt;')}</option>`)
    .join('');
  for (const id of ['pair-first', 'pair-second', 'wrap-body']) {
    el<HTMLSelectElement>(id).innerHTML = options;
  }
}

function wire(): void {
  const state: ViewState = {
    client: new ServiceClient(el<HTMLInputElement>('base-url').value),
    sessionId: null,
    lastPayload: null,
    expanded: new Set(),
    playedTexts: [],
  };

  el<HTMLInputElement>('base-url').addEventListener('change', ev => {
    state.client = new ServiceClient((ev.target as HTMLInputElement).value);
  });

  el<HTMLButtonElement>('new-game').addEventListener('click', async () => {
    const n = Number(el<HTMLInputElement>('game-n').value);
    const w = el<HTMLInputElement>('game-w').value.trim();
    try {
      const desc = await state.client.createSession(n, w);
      state.sessionId = desc.id;
      state.expanded = new Set();
      setStatus(`session ${desc.id}: challenge ${desc.a0} / ${desc.b0}`);
      await refresh(state);
      syncPickers(state);
    } catch (err) {
      setStatus(err instanceof ServiceError ? err.message : String(err), true);
    }
  });

  el<HTMLButtonElement>('submit-move').addEventListener('click', async () => {
    if (state.sessionId === null) {
      setStatus('start a game first', true);
      return;
    }
    const built: BuildResult = buildMoveExpression(readDraft(), state.playedTexts);
    if (!built.ok) {
      setStatus(built.message, true);
      return;
    }
    const side = el<HTMLSelectElement>('move-side').value as 'left' | 'right';
    const round = Math.max(0, state.playedTexts.length / 2 - 2);
    try {
      const reply = await state.client.postMove(state.sessionId, side, built.text, round);
      setStatus(reply.done ? 'game finished' : `reply: ${reply.reply}`);
      await refresh(state);
      syncPickers(state);
    } catch (err) {
      setStatus(err instanceof ServiceError ? err.message : String(err), true);
    }
  });

  el<HTMLElement>('board').addEventListener('click', ev => {
    const target = ev.target as HTMLElement;
    const key = target.getAttribute?.('data-unfold');
    if (key) {
      state.expanded.add(key);
      redraw(state);
    }
  });

  redraw(state);
}

if (typeof document !== 'undefined' && document.getElementById('board')) {
  wire();
}
