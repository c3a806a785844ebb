// HTML rendering, all string-in string-out. The browser shell attaches the
// event handlers; tests assert on the markup directly.

import { BoardModel } from './board.js';
import { Report } from './schema.js';
import { ElementNode, TermNode, unfoldOnce } from './terms.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

// Expansion state lives in the view, keyed by a path into the tree: 'l'/'r'
// for pair children, 'b' for a spine body, 'u' for a taken unfold step.
export type ExpandedSet = ReadonlySet<string>;

function renderNode(node: TermNode, path: string, expanded: ExpandedSet): string {
  const cls = node.synthesized ? ' synthesized' : '';
  switch (node.kind) {
    case 'leaf':
      return `<li class="leaf${cls}"><code>${escapeHtml(node.text)}</code></li>`;
    case 'pair':
      return (
        `<li class="pair${cls}"><code>p</code><ul>` +
        renderNode(node.left, path + 'l', expanded) +
        renderNode(node.right, path + 'r', expanded) +
        '</ul></li>'
      );
    case 'rnode': {
      const open = expanded.has(path + 'u');
      let inner: string;
      if (open) {
        inner = '<ul>' + renderNode(unfoldOnce(node), path + 'u', expanded) + '</ul>';
      } else {
        inner =
          `<button type="button" class="unfold" data-unfold="${escapeHtml(path)}u">` +
          'unfold one step</button>';
      }
      return (
        `<li class="spine-head${cls}"><code>${escapeHtml(`r(${node.level},…)`)}</code>` +
        `<code class="spine-body">${escapeHtml(node.body.text)}</code>${inner}</li>`
      );
    }
  }
}

export function renderTree(text: string, node: ElementNode, expanded: ExpandedSet): string {
  if (node.kind === 'std') {
    return `<div class="tree std" data-element="${escapeHtml(text)}">` +
      `<code>${escapeHtml(node.text)}</code></div>`;
  }
  return (
    `<div class="tree" data-element="${escapeHtml(text)}"><ul>` +
    renderNode(node, escapeHtml(text) + '|', expanded) +
    '</ul></div>'
  );
}

function renderVerdict(verdict: Report | null, roundsLeft: number): string {
  if (verdict === null) {
    return `<div class="banner banner-open">game in progress, ${roundsLeft} round(s) left</div>`;
  }
  if (verdict.ok) {
    return '<div class="banner banner-pass">the played tuples satisfy the same atomic facts</div>';
  }
  const items = verdict.violations
    .map(v => `<li><strong class="clause">${escapeHtml(v.clause)}</strong> ` +
      `<code>${escapeHtml(v.witness)}</code></li>`)
    .join('');
  return `<div class="banner banner-fail">verdict: failed<ul class="violations">${items}</ul></div>`;
}

export function renderSchemaMismatch(message: string): string {
  return `<div class="banner banner-schema">the service payload does not look like a transcript: ` +
    `${escapeHtml(message)}</div>`;
}

export function renderReplayMismatch(): string {
  return '<div class="banner banner-schema">replay mismatch: this transcript does not ' +
    'reproduce from its own moves</div>';
}

export function renderBoard(model: BoardModel, expanded: ExpandedSet): string {
  const rows = model.pairs
    .map(pair => {
      const note = pair.report === null
        ? ''
        : pair.report.ok
          ? '<span class="round-ok">ok</span>'
          : '<span class="round-bad">violation</span>';
      return (
        `<tr><th>${escapeHtml(pair.label)}</th>` +
        `<td><code>${escapeHtml(pair.left)}</code></td>` +
        `<td><code>${escapeHtml(pair.right)}</code></td>` +
        `<td>${note}</td></tr>`
      );
    })
    .join('');

  const trees = [...model.trees.entries()]
    .map(([text, node]) => renderTree(text, node, expanded))
    .join('');

  const fragmentRows = model.fragment
    .map(e => `<tr><td><code>${escapeHtml(e.base)}</code></td>` +
      `<td><code>${escapeHtml(e.image)}</code></td></tr>`)
    .join('');

  return (
    `<section class="session">n = ${model.n}, anchor <code>${escapeHtml(model.w)}</code>, ` +
    `challenge <code>${escapeHtml(model.a0)}</code> / <code>${escapeHtml(model.b0)}</code></section>` +
    `<table class="played"><thead><tr><th></th><th>left</th><th>right</th><th></th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<section class="trees">${trees}</section>` +
    `<table class="fragment"><thead><tr><th>orbit base</th><th>image</th></tr></thead>` +
    `<tbody>${fragmentRows}</tbody></table>` +
    renderVerdict(model.verdict, model.roundsLeft)
  );
}
