/**
 * Word-level tokenization and vocabularies.
 *
 * Marker tokens are first-class vocabulary entries so the encoder can
 * learn their embeddings; the relation vocabulary is an ordered,
 * persisted index <-> relation bijection.
 */

const TOKEN_RE = /\[\\?(?:SUBJ|OBJ)\]|[A-Za-z0-9']+|[^\sA-Za-z0-9]/g;

export const PAD = "<pad>";
export const UNK = "<unk>";

export function tokenize(text: string): string[] {
  return text.match(TOKEN_RE) ?? [];
}

export class Vocab {
  readonly index = new Map<string, number>();
  readonly words: string[] = [];

  constructor(words: Iterable<string>) {
    for (const w of words) {
      if (!this.index.has(w)) {
        this.index.set(w, this.words.length);
        this.words.push(w);
      }
    }
  }

  static build(texts: Iterable<string>, extra: string[] = []): Vocab {
    const counts = new Map<string, number>();
    for (const text of texts) {
      for (const tok of tokenize(text)) {
        const key = tok.startsWith("[") ? tok : tok.toLowerCase();
        counts.set(key, (counts.get(key) ?? 0) + 1);
      }
    }
    const sorted = [...counts.keys()].sort();
    return new Vocab([PAD, UNK, ...extra, ...sorted]);
  }

  get size(): number {
    return this.words.length;
  }

  id(word: string): number {
    const key = word.startsWith("[") ? word : word.toLowerCase();
    return this.index.get(key) ?? this.index.get(UNK)!;
  }

  encode(tokens: string[], length: number): number[] {
    const ids = tokens.slice(0, length).map((t) => this.id(t));
    while (ids.length < length) ids.push(this.index.get(PAD)!);
    return ids;
  }

  toJSON(): string[] {
    return this.words;
  }

  static fromJSON(words: string[]): Vocab {
    return new Vocab(words);
  }
}

export class RelationVocabulary {
  readonly relations: string[];
  private readonly index = new Map<string, number>();

  constructor(relations: string[]) {
    this.relations = [...relations];
    this.relations.forEach((r, i) => this.index.set(r, i));
    if (this.index.size !== this.relations.length) {
      throw new Error("duplicate relations in vocabulary");
    }
  }

  static fromExamples(relations: Iterable<string>): RelationVocabulary {
    return new RelationVocabulary([...new Set(relations)].sort());
  }

  get size(): number {
    return this.relations.length;
  }

  id(relation: string): number {
    const i = this.index.get(relation);
    if (i === undefined) throw new Error(`unknown relation ${relation}`);
    return i;
  }

  relation(id: number): string {
    return this.relations[id];
  }

  /** One relation per line, the persisted form next to the weights. */
  toText(): string {
    return this.relations.join("\n") + "\n";
  }

  static fromText(text: string): RelationVocabulary {
    return new RelationVocabulary(text.split("\n").filter((l) => l.trim().length > 0));
  }
}
