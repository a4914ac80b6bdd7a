import * as net from "node:net";

import { beforeAll, describe, expect, it } from "vitest";

import { encodeExample, splitHoldout, DsExample } from "../src/data.js";
import { markSentence, SUBJ_OPEN, SUBJ_CLOSE, OBJ_OPEN, OBJ_CLOSE } from "../src/marking.js";
import { DEFAULT_CONFIG, RelationClassifier } from "../src/model.js";
import { handleLine, serveTcp, ServiceContext } from "../src/serve.js";
import { RelationVocabulary, Vocab } from "../src/vocab.js";
import { makeSynthetic } from "../scripts/make-synthetic.js";

let ctx: ServiceContext;

beforeAll(() => {
  const examples: DsExample[] = makeSynthetic(40, 11).map((l) => JSON.parse(l));
  const relations = RelationVocabulary.fromExamples(examples.map((e) => e.relation));
  const vocab = Vocab.build(
    examples.map((e) => markSentence(e.text, e.subj, e.obj)),
    [SUBJ_OPEN, SUBJ_CLOSE, OBJ_OPEN, OBJ_CLOSE],
  );
  const encoded = examples.map((e) => encodeExample(e, vocab, relations.id(e.relation), DEFAULT_CONFIG.maxLen));
  const model = new RelationClassifier({
    vocabSize: vocab.size,
    numRelations: relations.size,
    maxLen: DEFAULT_CONFIG.maxLen,
    embedDim: 16,
    hiddenDim: 16,
    fcDim: 16,
    seed: 2,
  });
  model.train(splitHoldout(encoded, 5).train, { epochs: 3, batchSize: 32, learningRate: 0.01 });
  ctx = { model, vocab, relations };
}, 600_000);

describe("handleLine", () => {
  it("returns a sorted K-entry distribution summing to one", () => {
    const request = JSON.stringify({
      question: "Where was Grace Hopper born?",
      subj: { surface: "Grace Hopper" },
      obj: { unknown: true },
    });
    const response = JSON.parse(handleLine(request, ctx));
    expect(response.scores).toHaveLength(ctx.relations.size);
    const total = response.scores.reduce((s: number, row: { p: number }) => s + row.p, 0);
    expect(Math.abs(total - 1)).toBeLessThan(1e-6);
    const ps = response.scores.map((r: { p: number }) => r.p);
    expect([...ps].sort((a, b) => b - a)).toEqual(ps);
  });

  it("ranks the template relation first after training", () => {
    // marked form mirrors the training pattern: [SUBJ] P [\SUBJ] was born in [OBJ] which [\OBJ] city ?
    const request = JSON.stringify({
      question: "Grace Hopper was born in which city?",
      subj: { surface: "Grace Hopper" },
      obj: { unknown: true },
    });
    const response = JSON.parse(handleLine(request, ctx));
    expect(response.scores[0].relation).toBe("toy:birthPlace");
  });

  it("answers malformed JSON with an error object", () => {
    const response = JSON.parse(handleLine("this is not json", ctx));
    expect(response.error).toBeTruthy();
  });

  it("answers a bad request shape with an error object", () => {
    const response = JSON.parse(handleLine(JSON.stringify({ question: "hm" }), ctx));
    expect(response.error).toMatch(/subj/);
  });
});

describe("serveTcp", () => {
  it("serves sequential requests on one connection and survives bad lines", async () => {
    const server = serveTcp(ctx, "127.0.0.1", 0);
    await new Promise<void>((resolve) => server.once("listening", resolve));
    const port = (server.address() as net.AddressInfo).port;

    const socket = net.createConnection({ host: "127.0.0.1", port });
    const lines: string[] = [];
    let buffer = "";
    socket.on("data", (chunk) => {
      buffer += chunk.toString();
      let idx;
      while ((idx = buffer.indexOf("\n")) >= 0) {
        lines.push(buffer.slice(0, idx));
        buffer = buffer.slice(idx + 1);
      }
    });
    await new Promise<void>((resolve) => socket.once("connect", resolve));

    socket.write("garbage\n");
    socket.write(
      JSON.stringify({
        question: "Who is married to Alan Turing?",
        subj: { unknown: true },
        obj: { surface: "Alan Turing" },
      }) + "\n",
    );
    await new Promise<void>((resolve) => {
      const check = () => (lines.length >= 2 ? resolve() : setTimeout(check, 20));
      check();
    });
    socket.end();
    server.close();

    expect(JSON.parse(lines[0]).error).toBeTruthy();
    const ok = JSON.parse(lines[1]);
    expect(ok.scores).toHaveLength(ctx.relations.size);
    expect(ok.scores[0].relation).toBe("toy:spouse");
  }, 60_000);
});
