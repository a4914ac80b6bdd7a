/**
 * Entity-aware relation classifier.
 *
 * A token embedding feeds a bidirectional recurrent encoder; the
 * final-layer hidden states at the two start-marker positions are
 * concatenated, passed through a fully connected layer, and projected
 * onto the relation vocabulary with a softmax head. The encoder is
 * randomly initialized and trained from scratch at desk scale; the
 * architecture keeps the marker-state-concat contract of larger
 * pretrained encoders.
 */

import * as tf from "@tensorflow/tfjs";
import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { EncodedInstance } from "./data.js";
import { RelationVocabulary, Vocab } from "./vocab.js";

export interface ModelConfig {
  vocabSize: number;
  numRelations: number;
  maxLen: number;
  embedDim: number;
  hiddenDim: number;
  fcDim: number;
  seed: number;
}

export const DEFAULT_CONFIG = {
  maxLen: 24,
  embedDim: 24,
  hiddenDim: 24,
  fcDim: 32,
  seed: 13,
};

export interface TrainOptions {
  epochs: number;
  batchSize: number;
  learningRate: number;
  logEvery?: number;
}

export function lcg(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s = (Math.imul(s, 1664525) + 1013904223) >>> 0;
    return s / 2 ** 32;
  };
}

function shuffled<T>(items: T[], rand: () => number): T[] {
  const out = [...items];
  for (let i = out.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [out[i], out[j]] = [out[j], out[i]];
  }
  return out;
}

function positionsToOneHot(positions: number[], maxLen: number): tf.Tensor2D {
  const buf = new Float32Array(positions.length * maxLen);
  positions.forEach((p, i) => {
    buf[i * maxLen + p] = 1;
  });
  return tf.tensor2d(buf, [positions.length, maxLen]);
}

export class RelationClassifier {
  readonly config: ModelConfig;
  private readonly embedding: tf.layers.Layer;
  private readonly encoder: tf.layers.Layer;
  private readonly fc: tf.layers.Layer;
  private readonly head: tf.layers.Layer;
  private built = false;

  constructor(config: ModelConfig) {
    if (config.numRelations < 2) {
      throw new Error("classification needs at least 2 relation types");
    }
    this.config = config;
    const init = (offset: number) => tf.initializers.glorotUniform({ seed: config.seed + offset });
    this.embedding = tf.layers.embedding({
      inputDim: config.vocabSize,
      outputDim: config.embedDim,
      embeddingsInitializer: init(1),
    });
    this.encoder = tf.layers.bidirectional({
      layer: tf.layers.lstm({
        units: config.hiddenDim,
        returnSequences: true,
        kernelInitializer: init(2),
        recurrentInitializer: init(3),
      }) as tf.layers.RNN,
      mergeMode: "concat",
    });
    this.fc = tf.layers.dense({ units: config.fcDim, activation: "tanh", kernelInitializer: init(4) });
    this.head = tf.layers.dense({ units: config.numRelations, kernelInitializer: init(5) });
  }

  private forward(tokenIds: tf.Tensor2D, subjOneHot: tf.Tensor2D, objOneHot: tf.Tensor2D): tf.Tensor2D {
    const embedded = this.embedding.apply(tokenIds) as tf.Tensor3D;
    const states = this.encoder.apply(embedded) as tf.Tensor3D; // [B, T, 2H]
    const pick = (oneHot: tf.Tensor2D) =>
      tf.matMul(oneHot.expandDims(1), states).squeeze([1]); // [B, 2H]
    const subjVec = pick(subjOneHot);
    const objVec = pick(objOneHot);
    const joined = tf.concat([subjVec, objVec], 1);
    const hidden = this.fc.apply(joined) as tf.Tensor2D;
    this.built = true;
    return this.head.apply(hidden) as tf.Tensor2D;
  }

  private ensureBuilt(): void {
    if (this.built) return;
    tf.tidy(() => {
      const t = tf.zeros([1, this.config.maxLen], "int32") as tf.Tensor2D;
      const oh = positionsToOneHot([0], this.config.maxLen);
      this.forward(t, oh, oh);
    });
  }

  private get layers(): tf.layers.Layer[] {
    return [this.embedding, this.encoder, this.fc, this.head];
  }

  trainableVariables(): tf.Variable[] {
    this.ensureBuilt();
    // LayerVariable.val is typed protected but is the documented way to
    // reach the underlying tf.Variable for a custom training loop
    return this.layers.flatMap((l) =>
      l.trainableWeights.map((w) => (w as unknown as { val: tf.Variable }).val),
    );
  }

  private batchTensors(batch: EncodedInstance[]) {
    const tokenIds = tf.tensor2d(
      batch.map((b) => b.tokenIds),
      [batch.length, this.config.maxLen],
      "int32",
    );
    const subj = positionsToOneHot(batch.map((b) => b.subjPos), this.config.maxLen);
    const obj = positionsToOneHot(batch.map((b) => b.objPos), this.config.maxLen);
    const labels = tf.tensor1d(batch.map((b) => b.label), "int32");
    return { tokenIds, subj, obj, labels };
  }

  train(instances: EncodedInstance[], options: TrainOptions): number[] {
    this.ensureBuilt();
    const optimizer = tf.train.adam(options.learningRate);
    const vars = this.trainableVariables();
    const rand = lcg(this.config.seed);
    const losses: number[] = [];
    for (let epoch = 0; epoch < options.epochs; epoch++) {
      const order = shuffled(instances, rand);
      let epochLoss = 0;
      let batches = 0;
      for (let start = 0; start < order.length; start += options.batchSize) {
        const batch = order.slice(start, start + options.batchSize);
        const { tokenIds, subj, obj, labels } = this.batchTensors(batch);
        const lossTensor = optimizer.minimize(
          () => {
            const logits = this.forward(tokenIds, subj, obj);
            const oneHot = tf.oneHot(labels, this.config.numRelations);
            return tf.losses.softmaxCrossEntropy(oneHot, logits) as tf.Scalar;
          },
          true,
          vars,
        ) as tf.Scalar;
        epochLoss += lossTensor.dataSync()[0];
        batches += 1;
        tf.dispose([tokenIds, subj, obj, labels, lossTensor]);
      }
      losses.push(epochLoss / Math.max(batches, 1));
      if (options.logEvery && (epoch + 1) % options.logEvery === 0) {
        console.error(`epoch ${epoch + 1}/${options.epochs} loss ${losses.at(-1)!.toFixed(4)}`);
      }
    }
    optimizer.dispose();
    return losses;
  }

  predictProba(instance: Omit<EncodedInstance, "label">): Float32Array {
    this.ensureBuilt();
    return tf.tidy(() => {
      const tokenIds = tf.tensor2d([instance.tokenIds], [1, this.config.maxLen], "int32");
      const subj = positionsToOneHot([instance.subjPos], this.config.maxLen);
      const obj = positionsToOneHot([instance.objPos], this.config.maxLen);
      const logits = this.forward(tokenIds, subj, obj);
      return tf.softmax(logits).dataSync() as Float32Array;
    });
  }

  accuracy(instances: EncodedInstance[]): number {
    let hits = 0;
    for (const inst of instances) {
      const probs = this.predictProba(inst);
      let best = 0;
      for (let k = 1; k < probs.length; k++) if (probs[k] > probs[best]) best = k;
      if (best === inst.label) hits += 1;
    }
    return instances.length ? hits / instances.length : 0;
  }

  /** Checkpoint layout: config.json, vocab.json, relations.txt, weights.json. */
  save(dir: string, vocab: Vocab, relations: RelationVocabulary): void {
    this.ensureBuilt();
    mkdirSync(dir, { recursive: true });
    writeFileSync(join(dir, "config.json"), JSON.stringify(this.config, null, 2) + "\n");
    writeFileSync(join(dir, "vocab.json"), JSON.stringify(vocab.toJSON()) + "\n");
    writeFileSync(join(dir, "relations.txt"), relations.toText());
    const weights = this.layers.map((layer) =>
      layer.getWeights().map((w) => ({
        shape: w.shape,
        data: Buffer.from(new Float32Array(w.dataSync()).buffer).toString("base64"),
      })),
    );
    writeFileSync(join(dir, "weights.json"), JSON.stringify(weights) + "\n");
  }

  static load(dir: string): { model: RelationClassifier; vocab: Vocab; relations: RelationVocabulary } {
    const config: ModelConfig = JSON.parse(readFileSync(join(dir, "config.json"), "utf-8"));
    const vocab = Vocab.fromJSON(JSON.parse(readFileSync(join(dir, "vocab.json"), "utf-8")));
    const relations = RelationVocabulary.fromText(readFileSync(join(dir, "relations.txt"), "utf-8"));
    if (relations.size !== config.numRelations || vocab.size !== config.vocabSize) {
      throw new Error("checkpoint vocabulary/relations do not match its config");
    }
    const model = new RelationClassifier(config);
    model.ensureBuilt();
    const stored: Array<Array<{ shape: number[]; data: string }>> = JSON.parse(
      readFileSync(join(dir, "weights.json"), "utf-8"),
    );
    model.layers.forEach((layer, i) => {
      const tensors = stored[i].map((w) => {
        const buf = Buffer.from(w.data, "base64");
        return tf.tensor(new Float32Array(buf.buffer, buf.byteOffset, buf.byteLength / 4), w.shape);
      });
      layer.setWeights(tensors);
      tensors.forEach((t) => t.dispose());
    });
    return { model, vocab, relations };
  }
}
