/**
 * Newline-delimited JSON inference protocol.
 *
 * Request:  {"question": str,
 *            "subj": {"surface": str} | {"start": int, "end": int} | {"unknown": true},
 *            "obj": ...}
 * Response: {"scores": [{"relation": iri, "p": float}, ...]}  sorted by p,
 * or {"error": "..."} for a malformed request; the service keeps running.
 */

import * as net from "node:net";
import * as readline from "node:readline";

import { encodeQuestionInstance } from "./infer.js";
import { RelationClassifier } from "./model.js";
import { RelationVocabulary, Vocab } from "./vocab.js";

export interface ServiceContext {
  model: RelationClassifier;
  vocab: Vocab;
  relations: RelationVocabulary;
}

export function handleLine(line: string, ctx: ServiceContext): string {
  try {
    const request = JSON.parse(line);
    if (typeof request.question !== "string" || !request.subj || !request.obj) {
      throw new Error("request needs question, subj and obj");
    }
    const instance = encodeQuestionInstance(
      request.question,
      request.subj,
      request.obj,
      ctx.vocab,
      ctx.model.config.maxLen,
    );
    const probs = ctx.model.predictProba(instance);
    const scores = ctx.relations.relations
      .map((relation, i) => ({ relation, p: probs[i] }))
      .sort((a, b) => b.p - a.p || (a.relation < b.relation ? -1 : 1));
    return JSON.stringify({ scores });
  } catch (err) {
    return JSON.stringify({ error: err instanceof Error ? err.message : String(err) });
  }
}

export function serveStdio(ctx: ServiceContext): Promise<void> {
  const rl = readline.createInterface({ input: process.stdin, terminal: false });
  return new Promise((resolve) => {
    rl.on("line", (line) => {
      if (line.trim()) process.stdout.write(handleLine(line, ctx) + "\n");
    });
    rl.on("close", resolve);
  });
}

export function serveTcp(ctx: ServiceContext, host: string, port: number): net.Server {
  const server = net.createServer((socket) => {
    let buffer = "";
    socket.on("data", (chunk) => {
      buffer += chunk.toString("utf-8");
      let idx: number;
      while ((idx = buffer.indexOf("\n")) >= 0) {
        const line = buffer.slice(0, idx);
        buffer = buffer.slice(idx + 1);
        if (line.trim()) socket.write(handleLine(line, ctx) + "\n");
      }
    });
    socket.on("error", () => socket.destroy());
  });
  server.listen(port, host);
  return server;
}
