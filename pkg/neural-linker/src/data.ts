/**
 * Distant-supervision example IO and encoding.
 *
 * The input format is the JSON-lines contract produced by the linking
 * pipeline's gen-ds command:
 *   {"text", "subj": {"iri","start","end"}, "obj": {...}, "relation"}
 */

import { readFileSync } from "node:fs";

import { markSentence, SUBJ_OPEN, OBJ_OPEN } from "./marking.js";
import { tokenize, Vocab } from "./vocab.js";

export interface DsExample {
  text: string;
  subj: { iri?: string; start: number; end: number };
  obj: { iri?: string; start: number; end: number };
  relation: string;
}

export function readExamples(path: string): DsExample[] {
  const out: DsExample[] = [];
  const lines = readFileSync(path, "utf-8").split("\n");
  lines.forEach((line, i) => {
    if (!line.trim()) return;
    let rec: DsExample;
    try {
      rec = JSON.parse(line);
    } catch (err) {
      throw new Error(`${path}:${i + 1}: bad JSON (${err})`);
    }
    if (!rec.text || !rec.subj || !rec.obj || !rec.relation) {
      throw new Error(`${path}:${i + 1}: missing fields`);
    }
    out.push(rec);
  });
  return out;
}

export interface EncodedInstance {
  tokenIds: number[];
  subjPos: number;
  objPos: number;
  label: number;
}

/** Marked token sequence with the two start-marker positions. */
export function markTokens(marked: string): { tokens: string[]; subjPos: number; objPos: number } {
  const tokens = tokenize(marked);
  const subjPos = tokens.indexOf(SUBJ_OPEN);
  const objPos = tokens.indexOf(OBJ_OPEN);
  if (subjPos < 0 || objPos < 0) {
    throw new Error("marked text lost its start markers during tokenization");
  }
  return { tokens, subjPos, objPos };
}

export function encodeExample(
  ex: DsExample,
  vocab: Vocab,
  label: number,
  maxLen: number,
): EncodedInstance {
  const marked = markSentence(ex.text, ex.subj, ex.obj);
  const { tokens, subjPos, objPos } = markTokens(marked);
  if (subjPos >= maxLen || objPos >= maxLen) {
    throw new Error(`sequence longer than ${maxLen} tokens cuts off a marker`);
  }
  return { tokenIds: vocab.encode(tokens, maxLen), subjPos, objPos, label };
}

/** Deterministic split: every k-th example held out. */
export function splitHoldout<T>(items: T[], every: number): { train: T[]; dev: T[] } {
  const train: T[] = [];
  const dev: T[] = [];
  items.forEach((item, i) => {
    if ((i + 1) % every === 0) dev.push(item);
    else train.push(item);
  });
  return { train, dev };
}
