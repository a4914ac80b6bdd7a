/**
 * Synthetic 5-relation DS set with lexically separable templates,
 * in the shared JSON-lines contract. 200 examples per relation.
 *
 *   node --loader ts-node/esm scripts/make-synthetic.ts [out.jsonl] [per-relation]
 */

import { writeFileSync } from "node:fs";

import { lcg } from "../src/model.js";

const FIRST = ["Ada", "Grace", "Alan", "Edsger", "Barbara", "Donald", "John", "Radia",
  "Margaret", "Tony", "Niklaus", "Ken", "Dennis", "Bjarne", "Guido", "Anders"];
const LAST = ["Lovelace", "Hopper", "Turing", "Dijkstra", "Liskov", "Knuth", "McCarthy",
  "Perlman", "Hamilton", "Hoare", "Wirth", "Thompson", "Ritchie", "Stroustrup"];
const CITIES = ["Lisbon", "Porto", "Graz", "Zurich", "Lyon", "Delft", "Uppsala", "Bergen",
  "Leipzig", "Krakow", "Brno", "Ghent", "Turku", "Aarhus"];
const ORGS = ["Acme Labs", "Initech", "Globex", "Hooli", "Vandelay Systems", "Wayne Research",
  "Stark Works", "Umbrella Analytics"];
const SCHOOLS = ["Ridgeview University", "Lakeside College", "Northgate Institute",
  "Harborview Academy", "Westbrook University"];

interface Template {
  relation: string;
  render: (subj: string, obj: string) => string;
  objects: string[];
}

const TEMPLATES: Template[] = [
  { relation: "toy:birthPlace", render: (p, c) => `${p} was born in ${c}.`, objects: CITIES },
  { relation: "toy:deathPlace", render: (p, c) => `${p} died in ${c}.`, objects: CITIES },
  { relation: "toy:employer", render: (p, o) => `${p} works for ${o}.`, objects: ORGS },
  { relation: "toy:education", render: (p, u) => `${p} studied at ${u}.`, objects: SCHOOLS },
  { relation: "toy:spouse", render: (p, q) => `${p} is married to ${q}.`, objects: [] },
];

function personName(rand: () => number): string {
  return `${FIRST[Math.floor(rand() * FIRST.length)]} ${LAST[Math.floor(rand() * LAST.length)]}`;
}

export function makeSynthetic(perRelation: number, seed = 7): string[] {
  const rand = lcg(seed);
  const lines: string[] = [];
  for (const template of TEMPLATES) {
    for (let i = 0; i < perRelation; i++) {
      const subj = personName(rand);
      let obj = template.objects.length
        ? template.objects[Math.floor(rand() * template.objects.length)]
        : personName(rand);
      while (obj === subj) obj = personName(rand);
      const text = template.render(subj, obj);
      const s = text.indexOf(subj);
      const o = text.indexOf(obj, s + subj.length);
      lines.push(
        JSON.stringify({
          text,
          subj: { iri: `toy:${subj.replaceAll(" ", "_")}`, start: s, end: s + subj.length },
          obj: { iri: `toy:${obj.replaceAll(" ", "_")}`, start: o, end: o + obj.length },
          relation: template.relation,
        }),
      );
    }
  }
  return lines;
}

const isEntrypoint = process.argv[1]?.includes("make-synthetic");
if (isEntrypoint) {
  const out = process.argv[2] ?? "data/synthetic.jsonl";
  const per = process.argv[3] ? parseInt(process.argv[3], 10) : 200;
  writeFileSync(out, makeSynthetic(per).join("\n") + "\n");
  console.error(`wrote ${per * TEMPLATES.length} examples to ${out}`);
}
