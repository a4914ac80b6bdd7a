/**
 * neural-linker CLI.
 *
 *   train --ds ds.jsonl --model-out dir [--epochs 6] [--seed 13]
 *         [--batch 32] [--lr 0.01] [--embed-dim 24] [--hidden-dim 24]
 *         [--fc-dim 32] [--max-len 24] [--holdout-every 5]
 *   serve --model dir [--listen host:port]      (default: stdio)
 *   mark  --question "..." --subj '{"surface":"x"}' --obj '{"unknown":true}'
 */

import { encodeExample, readExamples, splitHoldout } from "./data.js";
import { markQuestion } from "./marking.js";
import { DEFAULT_CONFIG, RelationClassifier } from "./model.js";
import { serveStdio, serveTcp } from "./serve.js";
import { RelationVocabulary, Vocab } from "./vocab.js";
import { markSentence, SUBJ_OPEN, SUBJ_CLOSE, OBJ_OPEN, OBJ_CLOSE } from "./marking.js";

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    if (!argv[i].startsWith("--")) throw new Error(`unexpected argument ${argv[i]}`);
    const key = argv[i].slice(2);
    const value = i + 1 < argv.length && !argv[i + 1].startsWith("--") ? argv[++i] : "true";
    args.set(key, value);
  }
  return args;
}

function required(args: Map<string, string>, key: string): string {
  const v = args.get(key);
  if (v === undefined) throw new Error(`--${key} is required`);
  return v;
}

function intArg(args: Map<string, string>, key: string, fallback: number): number {
  return args.has(key) ? parseInt(args.get(key)!, 10) : fallback;
}

function floatArg(args: Map<string, string>, key: string, fallback: number): number {
  return args.has(key) ? parseFloat(args.get(key)!) : fallback;
}

export async function train(args: Map<string, string>): Promise<number> {
  const examples = readExamples(required(args, "ds"));
  const relations = RelationVocabulary.fromExamples(examples.map((e) => e.relation));
  if (relations.size < 2) {
    console.error(`dataset has ${relations.size} relation type(s); need at least 2`);
    return 2;
  }
  const maxLen = intArg(args, "max-len", DEFAULT_CONFIG.maxLen);
  const markerTokens = [SUBJ_OPEN, SUBJ_CLOSE, OBJ_OPEN, OBJ_CLOSE];
  const vocab = Vocab.build(
    examples.map((e) => markSentence(e.text, e.subj, e.obj)),
    markerTokens,
  );
  const encoded = examples.map((e) => encodeExample(e, vocab, relations.id(e.relation), maxLen));
  const every = intArg(args, "holdout-every", 5);
  const { train: trainSet, dev } = splitHoldout(encoded, every);

  const model = new RelationClassifier({
    vocabSize: vocab.size,
    numRelations: relations.size,
    maxLen,
    embedDim: intArg(args, "embed-dim", DEFAULT_CONFIG.embedDim),
    hiddenDim: intArg(args, "hidden-dim", DEFAULT_CONFIG.hiddenDim),
    fcDim: intArg(args, "fc-dim", DEFAULT_CONFIG.fcDim),
    seed: intArg(args, "seed", DEFAULT_CONFIG.seed),
  });
  const losses = model.train(trainSet, {
    epochs: intArg(args, "epochs", 6),
    batchSize: intArg(args, "batch", 32),
    learningRate: floatArg(args, "lr", 0.01),
    logEvery: 1,
  });
  const accuracy = model.accuracy(dev);
  console.error(
    `trained on ${trainSet.length} examples, ${relations.size} relations; ` +
    `final loss ${losses.at(-1)!.toFixed(4)}; held-out accuracy ${accuracy.toFixed(4)}`,
  );
  const out = required(args, "model-out");
  model.save(out, vocab, relations);
  console.error(`checkpoint written to ${out}`);
  return 0;
}

export async function serve(args: Map<string, string>): Promise<number> {
  const ctx = (() => {
    const { model, vocab, relations } = RelationClassifier.load(required(args, "model"));
    return { model, vocab, relations };
  })();
  const listen = args.get("listen");
  if (listen) {
    const [host, port] = listen.includes(":") ? listen.split(":") : ["127.0.0.1", listen];
    serveTcp(ctx, host || "127.0.0.1", parseInt(port, 10));
    console.error(`listening on ${host || "127.0.0.1"}:${port}`);
    await new Promise(() => undefined); // run until killed
  } else {
    await serveStdio(ctx);
  }
  return 0;
}

export async function mark(args: Map<string, string>): Promise<number> {
  const marked = markQuestion(
    required(args, "question"),
    JSON.parse(required(args, "subj")),
    JSON.parse(required(args, "obj")),
  );
  process.stdout.write(marked + "\n");
  return 0;
}

export async function main(argv: string[]): Promise<number> {
  const [command, ...rest] = argv;
  try {
    const args = parseArgs(rest);
    if (command === "train") return await train(args);
    if (command === "serve") return await serve(args);
    if (command === "mark") return await mark(args);
    console.error("usage: neural-linker <train|serve|mark> [flags]");
    return 2;
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    return 2;
  }
}

const isEntrypoint = process.argv[1]?.endsWith("cli.js") || process.argv[1]?.endsWith("cli.ts");
if (isEntrypoint) {
  main(process.argv.slice(2)).then((code) => {
    if (code !== 0) process.exitCode = code;
  });
}
