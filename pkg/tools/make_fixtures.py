#!/usr/bin/env python3
"""Regenerate the test fixture world under tests/fixtures/.

The fixture KB, DS examples, embeddings, questions and stub
distributions are designed together so the end-to-end suite has exact
expected outcomes (macro F1 1.0 with all scorers, a strict drop
without the alignment scorer).  Run from the repository root:

    python3 tools/make_fixtures.py

The script re-links every fixture question after writing and fails if
the designed outcomes drift, so edits here are self-checking.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "tests" / "fixtures"
sys.path.insert(0, str(ROOT / "src"))

# ---------------------------------------------------------------- KB

PREFIXES = {
    "dbo": "http://dbpedia.org/ontology/",
    "dbr": "http://dbpedia.org/resource/",
    "owl": "http://www.w3.org/2002/07/owl#",
}

TYPES = {
    "dbr:Nikola_Tesla": "dbo:Person",
    "dbr:Marie_Curie": "dbo:Person",
    "dbr:Abraham_Lincoln": "dbo:Person",
    "dbr:Mary_Todd_Lincoln": "dbo:Person",
    "dbr:Che_Guevara": "dbo:Person",
    "dbr:Hilda_Guevara": "dbo:Person",
    "dbr:Ernesto_Guevara_Lynch": "dbo:Person",
    "dbr:Albert_Einstein": "dbo:Person",
    "dbr:Frida_Kahlo": "dbo:Person",
    "dbr:Diego_Rivera": "dbo:Person",
    "dbr:Leo_Tolstoy": "dbo:Person",
    "dbr:Seth_MacFarlane": "dbo:Person",
    "dbr:Matt_Groening": "dbo:Person",
    "dbr:Trey_Parker": "dbo:Person",
    "dbr:Vince_Gilligan": "dbo:Person",
    "dbr:Agustin_Almodovar": "dbo:Person",
    "dbr:Bertha_Navarro": "dbo:Person",
    "dbr:Benicio_del_Toro": "dbo:Actor",
    "dbr:Penelope_Cruz": "dbo:Actor",
    "dbr:Ivana_Baquero": "dbo:Actor",
    "dbr:Elena_Anaya": "dbo:Actor",
    "dbr:Anne_Hidalgo": "dbo:Politician",
    "dbr:Sadiq_Khan": "dbo:Politician",
    "dbr:Manuela_Carmena": "dbo:Politician",
    "dbr:Smiljan": "dbo:Village",
    "dbr:La_Higuera": "dbo:Village",
    "dbr:Yasnaya_Polyana": "dbo:Village",
    "dbr:Warsaw": "dbo:City",
    "dbr:Passy": "dbo:City",
    "dbr:Rosario": "dbo:City",
    "dbr:Hodgenville": "dbo:City",
    "dbr:Washington_DC": "dbo:City",
    "dbr:Springfield": "dbo:City",
    "dbr:Princeton": "dbo:City",
    "dbr:Coyoacan": "dbo:City",
    "dbr:Paris": "dbo:City",
    "dbr:London": "dbo:City",
    "dbr:Madrid": "dbo:City",
    "dbr:Spain": "dbo:Country",
    "dbr:France": "dbo:Country",
    "dbr:Volver": "dbo:Film",
    "dbr:Seven_Days_in_Havana": "dbo:Film",
    "dbr:Pans_Labyrinth": "dbo:Film",
    "dbr:Family_Guy": "dbo:TelevisionShow",
    "dbr:The_Simpsons": "dbo:TelevisionShow",
    "dbr:South_Park": "dbo:TelevisionShow",
    "dbr:Breaking_Bad": "dbo:TelevisionShow",
    "dbr:Slack": "dbo:Software",
    "dbr:Skype": "dbo:Software",
    "dbr:Firefox": "dbo:Software",
    "dbr:Java": "dbo:Software",
    "dbr:TinySpeck": "dbo:Company",
    "dbr:Microsoft": "dbo:Company",
    "dbr:Mozilla": "dbo:Company",
    "dbr:Sun_Microsystems": "dbo:Company",
}

FACTS = [
    ("dbr:Nikola_Tesla", "dbo:birthPlace", "dbr:Smiljan"),
    ("dbr:Marie_Curie", "dbo:birthPlace", "dbr:Warsaw"),
    ("dbr:Abraham_Lincoln", "dbo:birthPlace", "dbr:Hodgenville"),
    ("dbr:Che_Guevara", "dbo:birthPlace", "dbr:Rosario"),
    ("dbr:Nikola_Tesla", "dbo:deathPlace", "dbr:Smiljan"),
    ("dbr:Marie_Curie", "dbo:deathPlace", "dbr:Passy"),
    ("dbr:Che_Guevara", "dbo:deathPlace", "dbr:La_Higuera"),
    ("dbr:Abraham_Lincoln", "dbo:deathPlace", "dbr:Washington_DC"),
    ("dbr:Mary_Todd_Lincoln", "dbo:deathPlace", "dbr:Springfield"),
    ("dbr:Albert_Einstein", "dbo:residence", "dbr:Princeton"),
    ("dbr:Frida_Kahlo", "dbo:residence", "dbr:Coyoacan"),
    ("dbr:Leo_Tolstoy", "dbo:residence", "dbr:Yasnaya_Polyana"),
    ("dbr:Volver", "dbo:country", "dbr:Spain"),
    ("dbr:Seven_Days_in_Havana", "dbo:country", "dbr:Spain"),
    ("dbr:Pans_Labyrinth", "dbo:country", "dbr:Spain"),
    ("dbr:Volver", "dbo:producer", "dbr:Agustin_Almodovar"),
    ("dbr:Seven_Days_in_Havana", "dbo:producer", "dbr:Benicio_del_Toro"),
    ("dbr:Pans_Labyrinth", "dbo:producer", "dbr:Bertha_Navarro"),
    ("dbr:Volver", "dbo:starring", "dbr:Penelope_Cruz"),
    ("dbr:Pans_Labyrinth", "dbo:starring", "dbr:Ivana_Baquero"),
    ("dbr:Seven_Days_in_Havana", "dbo:starring", "dbr:Elena_Anaya"),
    ("dbr:Seth_MacFarlane", "dbo:creator", "dbr:Family_Guy"),
    ("dbr:Matt_Groening", "dbo:creator", "dbr:The_Simpsons"),
    ("dbr:Trey_Parker", "dbo:creator", "dbr:South_Park"),
    ("dbr:Vince_Gilligan", "dbo:creator", "dbr:Breaking_Bad"),
    ("dbr:Mary_Todd_Lincoln", "dbo:spouse", "dbr:Abraham_Lincoln"),
    ("dbr:Abraham_Lincoln", "dbo:spouse", "dbr:Mary_Todd_Lincoln"),
    ("dbr:Frida_Kahlo", "dbo:spouse", "dbr:Diego_Rivera"),
    ("dbr:Diego_Rivera", "dbo:spouse", "dbr:Frida_Kahlo"),
    ("dbr:TinySpeck", "dbo:product", "dbr:Slack"),
    ("dbr:Mozilla", "dbo:product", "dbr:Firefox"),
    ("dbr:Sun_Microsystems", "dbo:product", "dbr:Java"),
    ("dbr:Skype", "dbo:developer", "dbr:Microsoft"),
    ("dbr:Paris", "dbo:mayor", "dbr:Anne_Hidalgo"),
    ("dbr:London", "dbo:mayor", "dbr:Sadiq_Khan"),
    ("dbr:Madrid", "dbo:mayor", "dbr:Manuela_Carmena"),
    ("dbr:Che_Guevara", "dbo:child", "dbr:Hilda_Guevara"),
    ("dbr:Ernesto_Guevara_Lynch", "dbo:child", "dbr:Che_Guevara"),
    ("dbr:Marie_Curie", "dbo:knownFor", "dbr:Radioactivity"),
    ("dbr:Nikola_Tesla", "dbo:knownFor", "dbr:Alternating_Current"),
    ("dbr:France", "dbo:capital", "dbr:Paris"),
]

HIERARCHY = [
    ("dbo:Agent", "owl:Thing"),
    ("dbo:Person", "dbo:Agent"),
    ("dbo:Actor", "dbo:Person"),
    ("dbo:Politician", "dbo:Person"),
    ("dbo:Organisation", "dbo:Agent"),
    ("dbo:Company", "dbo:Organisation"),
    ("dbo:Place", "owl:Thing"),
    ("dbo:Settlement", "dbo:Place"),
    ("dbo:City", "dbo:Settlement"),
    ("dbo:Village", "dbo:Settlement"),
    ("dbo:Country", "dbo:Place"),
    ("dbo:Work", "owl:Thing"),
    ("dbo:Film", "dbo:Work"),
    ("dbo:TelevisionShow", "dbo:Work"),
    ("dbo:Software", "dbo:Work"),
]

CLASS_LABELS = [
    ("dbo:Person", "person"),
    ("dbo:Actor", "actor"),
    ("dbo:Politician", "politician"),
    ("dbo:Company", "company"),
    ("dbo:City", "city"),
    ("dbo:Village", "village"),
    ("dbo:Country", "country"),
    ("dbo:Film", "film"),
    ("dbo:Film", "movie"),
    ("dbo:TelevisionShow", "television show"),
    ("dbo:Software", "software"),
]

TYPE_MAPPING = [
    ("person", "dbo:Person"),
    ("city", "dbo:City"),
    ("village", "dbo:Village"),
    ("country", "dbo:Country"),
    ("company", "dbo:Company"),
    ("television-show", "dbo:TelevisionShow"),
    ("product", "dbo:Software"),
]

FRAME_ALIASES = [
    ("bear-02", "bear|bear children|birth|give birth"),
    ("die-01", "die|death"),
    ("grow-up-03", "grow up"),
    ("marry-01", "marry|wed|marriage"),
    ("produce-01", "produce|production"),
    ("star-01", "star|starring"),
    ("create-01", "create|creation"),
    ("develop-02", "develop|development"),
    ("have-org-role-91", "have organizational role"),
    ("have-03", "have|own"),
]


def entity_label(iri: str) -> str:
    return iri.split(":", 1)[1].replace("_", " ")


# ------------------------------------------------------- embeddings

# Words placed on a unit circle per concept group: within-group cosine
# is cos(angle difference), across groups exactly 0.  Label tokens for
# dbo:knownFor and dbo:capital are intentionally absent (fully OOV).
CONTENT_GROUPS = {
    "birth": [("birth", 0), ("born", 25), ("bear", 37)],
    "death": [("death", 0), ("die", 25), ("died", 30)],
    "place": [("place", 0), ("where", 71)],
    "produce": [("produce", 0), ("produced", 8), ("producer", 16), ("production", 12)],
    "develop": [("develop", 0), ("developed", 8), ("developer", 16), ("product", 68)],
    "star": [("star", 0), ("starring", 6), ("starred", 10)],
    "create": [("create", 0), ("created", 8), ("creator", 16), ("creation", 12)],
    "marry": [("marry", 0), ("marriage", 5), ("married", 8), ("wed", 12), ("spouse", 30)],
    "country": [("country", 0), ("spain", 45), ("spanish", 53)],
    "child": [("child", 0), ("children", 8)],
    "mayor": [("mayor", 0)],
    "residence": [("residence", 0), ("reside", 5), ("grow", 25), ("grew", 30)],
}

FILLER_WORDS = """
a about above after again all also among an and any are around as at be
because been before being below between big both but came can come could
day days did do does down during each early even every few first found
four from gave get give goes good great had has have he her here him his
home house how i if into is it its just know large last late later left
life like little long made make man many may me men more most much must
my name never new next no not now off often old on once one only or
other our out over own part people place? said same saw say see she
should since small so some still such take than that the their them then
there these they this those three through time times to together too two
under until up upon us use used very want was way we well went were what
when which while who whom whose will would year years yet you your
""".split()


def build_embeddings() -> dict[str, list[float]]:
    label_only = {"known", "capital"}
    groups = list(CONTENT_GROUPS.items())
    filler = [w for w in FILLER_WORDS if w.isalpha()]
    content_words = {w for _, members in groups for w, _ in members}
    filler = [w for w in filler if w not in content_words and w not in label_only and w != "for"]
    n_junk = 12
    dim = 2 * (len(groups) + n_junk)
    vectors: dict[str, list[float]] = {}
    for g, (_, members) in enumerate(groups):
        for word, angle in members:
            v = [0.0] * dim
            v[2 * g] = round(math.cos(math.radians(angle)), 6)
            v[2 * g + 1] = round(math.sin(math.radians(angle)), 6)
            vectors[word] = v
    for i, word in enumerate(sorted(set(filler))):
        g = len(groups) + (i % n_junk)
        angle = (i * 29) % 180
        v = [0.0] * dim
        v[2 * g] = round(math.cos(math.radians(angle)), 6)
        v[2 * g + 1] = round(math.sin(math.radians(angle)), 6)
        vectors[word] = v
    return vectors


# ------------------------------------------------- DS examples + AMRs

PERSON_AMR = '(p{i} / person :name (n{i} / name {ops}))'


def name_ops(surface: str, start: int = 1) -> str:
    return " ".join(f':op{j + start - 1} "{part}"' for j, part in enumerate(surface.split(), start=1))


def named(var: str, concept: str, surface: str) -> str:
    ops = " ".join(f':op{j} "{part}"' for j, part in enumerate(surface.split(), start=1))
    return f"({var} / {concept} :name (n{var} / name {ops}))"


def ds_record(text: str, subj_iri: str, subj_surface: str, obj_iri: str, obj_surface: str, relation: str):
    s = text.index(subj_surface)
    o = text.index(obj_surface)
    return {
        "text": text,
        "subj": {"iri": subj_iri, "start": s, "end": s + len(subj_surface)},
        "obj": {"iri": obj_iri, "start": o, "end": o + len(obj_surface)},
        "relation": relation,
    }


def build_ds() -> tuple[list[dict], list[str]]:
    records: list[dict] = []
    parses: list[str] = []

    def add(text, subj, s_surf, obj, o_surf, relation, amr):
        records.append(ds_record(text, subj, s_surf, obj, o_surf, relation))
        parses.append(amr)

    born = [
        ("dbr:Nikola_Tesla", "Nikola Tesla", "dbr:Smiljan", "Smiljan", "city"),
        ("dbr:Marie_Curie", "Marie Curie", "dbr:Warsaw", "Warsaw", "city"),
        ("dbr:Abraham_Lincoln", "Abraham Lincoln", "dbr:Hodgenville", "Hodgenville", "city"),
        ("dbr:Che_Guevara", "Che Guevara", "dbr:Rosario", "Rosario", "city"),
    ]
    for s, ss, o, os_, city in born:
        add(
            f"{ss} was born in {os_}.", s, ss, o, os_, "dbo:birthPlace",
            f"(b / bear-02 :ARG1 {named('p', 'person', ss)} :location {named('c', city, os_)})",
        )
    # the multi-relation pair: generated under deathPlace, disambiguated by
    # the bear-02 aliases back to birthPlace inside build_table
    add(
        "Nikola Tesla was born in Smiljan.", "dbr:Nikola_Tesla", "Nikola Tesla",
        "dbr:Smiljan", "Smiljan", "dbo:deathPlace",
        f"(b / bear-02 :ARG1 {named('p', 'person', 'Nikola Tesla')} :location {named('c', 'village', 'Smiljan')})",
    )

    died = [
        ("dbr:Marie_Curie", "Marie Curie", "dbr:Passy", "Passy"),
        ("dbr:Che_Guevara", "Che Guevara", "dbr:La_Higuera", "La Higuera"),
        ("dbr:Abraham_Lincoln", "Abraham Lincoln", "dbr:Washington_DC", "Washington"),
        ("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln", "dbr:Springfield", "Springfield"),
    ]
    for s, ss, o, os_ in died:
        add(
            f"{ss} died in {os_}.", s, ss, o, os_, "dbo:deathPlace",
            f"(d / die-01 :ARG1 {named('p', 'person', ss)} :location {named('c', 'city', os_)})",
        )

    grew = [
        ("dbr:Albert_Einstein", "Albert Einstein", "dbr:Princeton", "Princeton"),
        ("dbr:Frida_Kahlo", "Frida Kahlo", "dbr:Coyoacan", "Coyoacan"),
        ("dbr:Leo_Tolstoy", "Leo Tolstoy", "dbr:Yasnaya_Polyana", "Yasnaya Polyana"),
    ]
    for s, ss, o, os_ in grew:
        add(
            f"{ss} grew up in {os_}.", s, ss, o, os_, "dbo:residence",
            f"(g / grow-up-03 :ARG1 {named('p', 'person', ss)} :location {named('c', 'city', os_)})",
        )

    films = [
        ("dbr:Volver", "Volver"),
        ("dbr:Pans_Labyrinth", "Pans Labyrinth"),
        ("dbr:Seven_Days_in_Havana", "Seven Days in Havana"),
    ]
    for f, fs in films:
        add(
            f"{fs} was produced in Spain.", f, fs, "dbr:Spain", "Spain", "dbo:country",
            f"(p / produce-01 :ARG1 {named('m', 'movie', fs)} :location {named('c', 'country', 'Spain')})",
        )

    producers = [
        ("dbr:Volver", "Volver", "dbr:Agustin_Almodovar", "Agustin Almodovar"),
        ("dbr:Pans_Labyrinth", "Pans Labyrinth", "dbr:Bertha_Navarro", "Bertha Navarro"),
        ("dbr:Seven_Days_in_Havana", "Seven Days in Havana", "dbr:Benicio_del_Toro", "Benicio del Toro"),
    ]
    for f, fs, p, ps in producers:
        add(
            f"{fs} was produced by {ps}.", f, fs, p, ps, "dbo:producer",
            f"(p / produce-01 :ARG0 {named('a', 'person', ps)} :ARG1 {named('m', 'movie', fs)})",
        )

    stars = [
        ("dbr:Volver", "Volver", "dbr:Penelope_Cruz", "Penelope Cruz"),
        ("dbr:Pans_Labyrinth", "Pans Labyrinth", "dbr:Ivana_Baquero", "Ivana Baquero"),
        ("dbr:Seven_Days_in_Havana", "Seven Days in Havana", "dbr:Elena_Anaya", "Elena Anaya"),
    ]
    for f, fs, a, as_ in stars:
        add(
            f"{as_} starred in {fs}.", f, fs, a, as_, "dbo:starring",
            f"(s / star-01 :ARG1 {named('p', 'person', as_)} :ARG2 {named('m', 'movie', fs)})",
        )

    creators = [
        ("dbr:Seth_MacFarlane", "Seth MacFarlane", "dbr:Family_Guy", "Family Guy"),
        ("dbr:Matt_Groening", "Matt Groening", "dbr:The_Simpsons", "The Simpsons"),
        ("dbr:Trey_Parker", "Trey Parker", "dbr:South_Park", "South Park"),
        ("dbr:Vince_Gilligan", "Vince Gilligan", "dbr:Breaking_Bad", "Breaking Bad"),
    ]
    for p, ps, t, ts in creators:
        add(
            f"{ps} created {ts}.", p, ps, t, ts, "dbo:creator",
            f"(c / create-01 :ARG0 {named('p', 'person', ps)} :ARG1 {named('t', 'television-show', ts)})",
        )

    couples = [
        ("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln", "dbr:Abraham_Lincoln", "Abraham Lincoln"),
        ("dbr:Abraham_Lincoln", "Abraham Lincoln", "dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln"),
        ("dbr:Frida_Kahlo", "Frida Kahlo", "dbr:Diego_Rivera", "Diego Rivera"),
        ("dbr:Diego_Rivera", "Diego Rivera", "dbr:Frida_Kahlo", "Frida Kahlo"),
    ]
    for s, ss, o, os_ in couples:
        add(
            f"{ss} was married to {os_}.", s, ss, o, os_, "dbo:spouse",
            f"(m / marry-01 :ARG1 {named('p', 'person', ss)} :ARG2 {named('q', 'person', os_)})",
        )

    software = [
        ("dbr:TinySpeck", "TinySpeck", "dbr:Slack", "Slack"),
        ("dbr:Mozilla", "Mozilla", "dbr:Firefox", "Firefox"),
        ("dbr:Sun_Microsystems", "Sun Microsystems", "dbr:Java", "Java"),
    ]
    for c, cs, s, ss in software:
        add(
            f"{cs} developed {ss}.", c, cs, s, ss, "dbo:product",
            f"(d / develop-02 :ARG0 {named('c', 'company', cs)} :ARG1 {named('s', 'product', ss)})",
        )

    mayors = [
        ("dbr:Paris", "Paris", "dbr:Anne_Hidalgo", "Anne Hidalgo"),
        ("dbr:London", "London", "dbr:Sadiq_Khan", "Sadiq Khan"),
        ("dbr:Madrid", "Madrid", "dbr:Manuela_Carmena", "Manuela Carmena"),
    ]
    for c, cs, p, ps in mayors:
        add(
            f"{ps} is the mayor of {cs}.", c, cs, p, ps, "dbo:mayor",
            f"(h / have-org-role-91 :ARG0 {named('p', 'person', ps)} :ARG1 {named('c', 'city', cs)} :ARG2 (m / mayor))",
        )

    add(
        "Radioactivity fascinated Marie Curie.", "dbr:Marie_Curie", "Marie Curie",
        "dbr:Radioactivity", "Radioactivity", "dbo:knownFor",
        f"(f / fascinate-01 :ARG0 (r / radioactivity) :ARG1 {named('p', 'person', 'Marie Curie')})",
    )
    return records, parses


# -------------------------------------------------------- questions

QUESTIONS = [
    {
        "id": "q1",
        "text": "Who is starring in Spanish movies produced by Benicio del Toro?",
        "amr": '(s / star-01 :ARG1 (a / amr-unknown) :ARG2 (m / movie'
               ' :ARG1-of (p / produce-01'
               ' :ARG0 (b / person :name (n / name :op1 "Benicio" :op2 "del" :op3 "Toro"))'
               ' :location (c / country :name (n2 / name :op1 "Spain")))))',
        "entities": [{"surface": "Benicio del Toro", "iri": "dbr:Benicio_del_Toro"}],
        "answer_type": "dbo:Actor",
        "gold_relations": ["dbo:starring", "dbo:country", "dbo:producer"],
    },
    {
        "id": "q2",
        "text": "Who developed Skype?",
        "amr": '(d / develop-02 :ARG0 (a / amr-unknown) :ARG1 (s / product :name (n / name :op1 "Skype")))',
        "entities": [],
        "answer_type": "dbo:Company",
        "gold_relations": ["dbo:developer"],
    },
    {
        "id": "q3",
        "text": "Who developed Slack?",
        "amr": '(d / develop-02 :ARG0 (a / amr-unknown) :ARG1 (s / product :name (n / name :op1 "Slack")))',
        "entities": [{"surface": "Slack", "iri": "dbr:Slack"}],
        "answer_type": "dbo:Company",
        "gold_relations": ["dbo:product"],
    },
    {
        "id": "q4",
        "text": "Who created Family Guy?",
        "amr": '(c / create-01 :ARG0 (a / amr-unknown)'
               ' :ARG1 (t / television-show :name (n / name :op1 "Family" :op2 "Guy")))',
        "entities": [{"surface": "Family Guy", "iri": "dbr:Family_Guy"}],
        "answer_type": "dbo:Person",
        "gold_relations": ["dbo:creator"],
    },
    {
        "id": "q5",
        "text": "Where did Marie Curie grow up?",
        "amr": '(g / grow-up-03 :ARG1 (p / person :name (n / name :op1 "Marie" :op2 "Curie"))'
               ' :location (a / amr-unknown))',
        "entities": [{"surface": "Marie Curie", "iri": "dbr:Marie_Curie"}],
        "answer_type": "dbo:Place",
        "gold_relations": ["dbo:residence"],
    },
    {
        "id": "q6",
        "text": "Where was Nikola Tesla born?",
        "amr": '(b / bear-02 :ARG1 (p / person :name (n / name :op1 "Nikola" :op2 "Tesla"))'
               ' :location (a / amr-unknown))',
        "entities": [{"surface": "Nikola Tesla", "iri": "dbr:Nikola_Tesla"}],
        "answer_type": "dbo:Place",
        "gold_relations": ["dbo:birthPlace"],
    },
    {
        "id": "q7",
        "text": "Who was married to Abraham Lincoln?",
        "amr": '(m / marry-01 :ARG1 (a / amr-unknown)'
               ' :ARG2 (p / person :name (n / name :op1 "Abraham" :op2 "Lincoln")))',
        "entities": [{"surface": "Abraham Lincoln", "iri": "dbr:Abraham_Lincoln"}],
        "answer_type": "dbo:Person",
        "gold_relations": ["dbo:spouse"],
    },
    {
        "id": "q8",
        "text": "Who is the mayor of Paris?",
        "amr": '(h / have-org-role-91 :ARG0 (a / amr-unknown)'
               ' :ARG1 (c / city :name (n / name :op1 "Paris")) :ARG2 (m / mayor))',
        "entities": [{"surface": "Paris", "iri": "dbr:Paris"}],
        "answer_type": "dbo:Person",
        "gold_relations": ["dbo:mayor"],
    },
    {
        "id": "q9",
        "text": "Did Che Guevara have children?",
        "amr": '(h / have-03 :ARG0 (p / person :name (n / name :op1 "Che" :op2 "Guevara")) :ARG1 (c / child))',
        "entities": [{"surface": "Che Guevara", "iri": "dbr:Che_Guevara"}],
        "gold_relations": ["dbo:child"],
    },
    {
        "id": "q10",
        "text": "Where did Nikola Tesla die?",
        "amr": '(d / die-01 :ARG1 (p / person :name (n / name :op1 "Nikola" :op2 "Tesla"))'
               ' :location (a / amr-unknown))',
        "entities": [{"surface": "Nikola Tesla", "iri": "dbr:Nikola_Tesla"}],
        "answer_type": "dbo:Place",
        "gold_relations": ["dbo:deathPlace"],
    },
]

# the lexically opaque question where only statistical alignment knows
# the right relation: without it, KB connections vote dbo:birthPlace
ALIGNMENT_CRITICAL = "q5"

STUB_GOLD = {
    "q1": None,  # per-pair entries below
    "q2": "dbo:developer",
    "q3": "dbo:product",
    "q4": "dbo:creator",
    "q6": "dbo:birthPlace",
    "q7": "dbo:spouse",
    "q8": "dbo:mayor",
    "q9": "dbo:child",
    "q10": "dbo:deathPlace",
}

RUNNER_UP = {
    "dbo:developer": "dbo:product",
    "dbo:product": "dbo:developer",
    "dbo:creator": "dbo:producer",
    "dbo:birthPlace": "dbo:deathPlace",
    "dbo:deathPlace": "dbo:birthPlace",
    "dbo:spouse": "dbo:child",
    "dbo:mayor": "dbo:capital",
    "dbo:child": "dbo:spouse",
    "dbo:starring": "dbo:producer",
    "dbo:producer": "dbo:starring",
    "dbo:country": "dbo:capital",
}


def build_stub() -> list[dict]:
    from amrlink.amr import parse_penman, recover_spans, UNKNOWN_CONCEPT
    from amrlink.triples import decompose

    q1_relations = {
        "star-01": "dbo:starring",
        "produce-01": {"arg0.arg1": "dbo:producer", "arg1.arg0": "dbo:producer",
                       "arg0.location": "dbo:country", "location.arg0": "dbo:country",
                       "arg1.location": "dbo:country", "location.arg1": "dbo:country"},
    }
    entries = []
    for q in QUESTIONS:
        if q["id"] == ALIGNMENT_CRITICAL:
            continue
        graph = recover_spans(parse_penman(q["amr"]), q["text"])
        for t in decompose(graph):
            if q["id"] == "q1":
                by_frame = q1_relations[t.predicate.frame]
                rel = by_frame if isinstance(by_frame, str) else by_frame[
                    f"{t.predicate.subject_role}.{t.predicate.object_role}".lower()
                ]
            else:
                rel = STUB_GOLD[q["id"]]
            subj = None if graph.node(t.subject).concept == UNKNOWN_CONCEPT else t.subject_surface
            obj = None if graph.node(t.object).concept == UNKNOWN_CONCEPT else t.object_surface
            scores = {rel: 0.9}
            runner = RUNNER_UP.get(rel)
            if runner:
                scores[runner] = 0.05
            entries.append({"question": q["text"], "subj": subj, "obj": obj, "scores": scores})
    return entries


# ------------------------------------------------ gen-ds oracle corpus


def corpus_sentence(doc, pos, text, mentions, verbs=()):
    ments = []
    for iri, surface in mentions:
        start = text.index(surface)
        ments.append({"iri": iri, "start": start, "end": start + len(surface)})
    tokens = []
    for raw in text.split():
        word = raw.rstrip(".,")
        if word:
            if word.lower() in verbs:
                tokens.append([word, "VBD"])
            elif word[0].isupper():
                tokens.append([word, "NNP"])
            else:
                tokens.append([word, "IN"])
        if raw.endswith((".", ",")):
            tokens.append([raw[-1], "."])
    return {"doc_id": doc, "position": pos, "text": text, "mentions": ments, "tokens": tokens}


def build_corpus() -> list[dict]:
    s = corpus_sentence
    rows = [
        # Tesla's article: short/verbless noise, then the usable sentences
        s("Nikola_Tesla", 0, "Nikola Tesla.", [("dbr:Nikola_Tesla", "Nikola Tesla")]),
        s("Nikola_Tesla", 1, "Nikola Tesla was an inventor and engineer.",
          [("dbr:Nikola_Tesla", "Nikola Tesla")], verbs=("was",)),
        s("Nikola_Tesla", 2, "Nikola Tesla was born in Smiljan.",
          [("dbr:Nikola_Tesla", "Nikola Tesla"), ("dbr:Smiljan", "Smiljan")], verbs=("was", "born")),
        s("Nikola_Tesla", 3, "Nikola Tesla died in Smiljan.",
          [("dbr:Nikola_Tesla", "Nikola Tesla"), ("dbr:Smiljan", "Smiljan")], verbs=("died",)),
        s("Nikola_Tesla", 4, "Nikola Tesla pioneered Alternating Current.",
          [("dbr:Nikola_Tesla", "Nikola Tesla"), ("dbr:Alternating_Current", "Alternating Current")],
          verbs=("pioneered",)),
        s("Nikola_Tesla", 5, "Tesla Smiljan",
          [("dbr:Nikola_Tesla", "Tesla"), ("dbr:Smiljan", "Smiljan")]),
        # Curie
        s("Marie_Curie", 0, "Marie Curie was born in Warsaw.",
          [("dbr:Marie_Curie", "Marie Curie"), ("dbr:Warsaw", "Warsaw")], verbs=("was", "born")),
        s("Marie_Curie", 1, "Marie Curie died in Passy.",
          [("dbr:Marie_Curie", "Marie Curie"), ("dbr:Passy", "Passy")], verbs=("died",)),
        s("Marie_Curie", 2, "Marie Curie discovered Radioactivity.",
          [("dbr:Marie_Curie", "Marie Curie"), ("dbr:Radioactivity", "Radioactivity")], verbs=("discovered",)),
        # Lincoln: overlap-filter case first, a passing sentence later
        s("Abraham_Lincoln", 0, "Mary Todd Lincoln stayed at his side.",
          [("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln"), ("dbr:Abraham_Lincoln", "Lincoln")],
          verbs=("stayed",)),
        s("Abraham_Lincoln", 1, "Abraham Lincoln was born in Hodgenville.",
          [("dbr:Abraham_Lincoln", "Abraham Lincoln"), ("dbr:Hodgenville", "Hodgenville")],
          verbs=("was", "born")),
        s("Abraham_Lincoln", 2, "Abraham Lincoln married Mary Todd Lincoln in 1842.",
          [("dbr:Abraham_Lincoln", "Abraham Lincoln"), ("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln")],
          verbs=("married",)),
        s("Abraham_Lincoln", 3, "Abraham Lincoln died in Washington.",
          [("dbr:Abraham_Lincoln", "Abraham Lincoln"), ("dbr:Washington_DC", "Washington")],
          verbs=("died",)),
        # Mary Todd Lincoln's own article carries her spouse sentence
        s("Mary_Todd_Lincoln", 0, "Mary Todd Lincoln married Abraham Lincoln in Springfield.",
          [("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln"), ("dbr:Abraham_Lincoln", "Abraham Lincoln"),
           ("dbr:Springfield", "Springfield")],
          verbs=("married",)),
        s("Mary_Todd_Lincoln", 1, "Mary Todd Lincoln died in Springfield.",
          [("dbr:Mary_Todd_Lincoln", "Mary Todd Lincoln"), ("dbr:Springfield", "Springfield")],
          verbs=("died",)),
        # Che
        s("Che_Guevara", 0, "Che Guevara was born in Rosario.",
          [("dbr:Che_Guevara", "Che Guevara"), ("dbr:Rosario", "Rosario")], verbs=("was", "born")),
        s("Che_Guevara", 1, "Che Guevara died in La Higuera.",
          [("dbr:Che_Guevara", "Che Guevara"), ("dbr:La_Higuera", "La Higuera")], verbs=("died",)),
        s("Che_Guevara", 2, "Ernesto Guevara Lynch raised Che Guevara.",
          [("dbr:Ernesto_Guevara_Lynch", "Ernesto Guevara Lynch"), ("dbr:Che_Guevara", "Che Guevara")],
          verbs=("raised",)),
        s("Che_Guevara", 3, "Hilda Guevara was a daughter of Che Guevara.",
          [("dbr:Hilda_Guevara", "Hilda Guevara"), ("dbr:Che_Guevara", "Che Guevara")], verbs=("was",)),
        # residence trio
        s("Albert_Einstein", 0, "Albert Einstein grew up in Princeton.",
          [("dbr:Albert_Einstein", "Albert Einstein"), ("dbr:Princeton", "Princeton")], verbs=("grew",)),
        s("Frida_Kahlo", 0, "Frida Kahlo grew up in Coyoacan.",
          [("dbr:Frida_Kahlo", "Frida Kahlo"), ("dbr:Coyoacan", "Coyoacan")], verbs=("grew",)),
        s("Frida_Kahlo", 1, "Frida Kahlo married Diego Rivera twice.",
          [("dbr:Frida_Kahlo", "Frida Kahlo"), ("dbr:Diego_Rivera", "Diego Rivera")], verbs=("married",)),
        s("Leo_Tolstoy", 0, "Leo Tolstoy grew up in Yasnaya Polyana.",
          [("dbr:Leo_Tolstoy", "Leo Tolstoy"), ("dbr:Yasnaya_Polyana", "Yasnaya Polyana")], verbs=("grew",)),
        # films
        s("Volver", 0, "Volver was produced in Spain.",
          [("dbr:Volver", "Volver"), ("dbr:Spain", "Spain")], verbs=("was", "produced")),
        s("Volver", 1, "Agustin Almodovar produced Volver.",
          [("dbr:Agustin_Almodovar", "Agustin Almodovar"), ("dbr:Volver", "Volver")], verbs=("produced",)),
        s("Volver", 2, "Penelope Cruz starred in Volver.",
          [("dbr:Penelope_Cruz", "Penelope Cruz"), ("dbr:Volver", "Volver")], verbs=("starred",)),
        s("Pans_Labyrinth", 0, "Pans Labyrinth was produced in Spain.",
          [("dbr:Pans_Labyrinth", "Pans Labyrinth"), ("dbr:Spain", "Spain")], verbs=("was", "produced")),
        s("Pans_Labyrinth", 1, "Bertha Navarro produced Pans Labyrinth.",
          [("dbr:Bertha_Navarro", "Bertha Navarro"), ("dbr:Pans_Labyrinth", "Pans Labyrinth")],
          verbs=("produced",)),
        s("Pans_Labyrinth", 2, "Ivana Baquero starred in Pans Labyrinth.",
          [("dbr:Ivana_Baquero", "Ivana Baquero"), ("dbr:Pans_Labyrinth", "Pans Labyrinth")],
          verbs=("starred",)),
        s("Seven_Days_in_Havana", 0, "Seven Days in Havana was produced in Spain.",
          [("dbr:Seven_Days_in_Havana", "Seven Days in Havana"), ("dbr:Spain", "Spain")],
          verbs=("was", "produced")),
        s("Seven_Days_in_Havana", 1, "Benicio del Toro produced Seven Days in Havana.",
          [("dbr:Benicio_del_Toro", "Benicio del Toro"),
           ("dbr:Seven_Days_in_Havana", "Seven Days in Havana")], verbs=("produced",)),
        s("Seven_Days_in_Havana", 2, "Elena Anaya starred in Seven Days in Havana.",
          [("dbr:Elena_Anaya", "Elena Anaya"), ("dbr:Seven_Days_in_Havana", "Seven Days in Havana")],
          verbs=("starred",)),
        # shows
        s("Family_Guy", 0, "Seth MacFarlane created Family Guy.",
          [("dbr:Seth_MacFarlane", "Seth MacFarlane"), ("dbr:Family_Guy", "Family Guy")], verbs=("created",)),
        s("The_Simpsons", 0, "Matt Groening created The Simpsons.",
          [("dbr:Matt_Groening", "Matt Groening"), ("dbr:The_Simpsons", "The Simpsons")], verbs=("created",)),
        s("South_Park", 0, "Trey Parker created South Park.",
          [("dbr:Trey_Parker", "Trey Parker"), ("dbr:South_Park", "South Park")], verbs=("created",)),
        s("Breaking_Bad", 0, "Vince Gilligan created Breaking Bad.",
          [("dbr:Vince_Gilligan", "Vince Gilligan"), ("dbr:Breaking_Bad", "Breaking Bad")],
          verbs=("created",)),
        # software
        s("Slack", 0, "TinySpeck developed Slack.",
          [("dbr:TinySpeck", "TinySpeck"), ("dbr:Slack", "Slack")], verbs=("developed",)),
        s("Firefox", 0, "Mozilla developed Firefox.",
          [("dbr:Mozilla", "Mozilla"), ("dbr:Firefox", "Firefox")], verbs=("developed",)),
        s("Java", 0, "Sun Microsystems developed Java.",
          [("dbr:Sun_Microsystems", "Sun Microsystems"), ("dbr:Java", "Java")], verbs=("developed",)),
        s("Skype", 0, "Skype video calls.", [("dbr:Skype", "Skype")]),
        # mayors
        s("Paris", 0, "Anne Hidalgo is the mayor of Paris.",
          [("dbr:Anne_Hidalgo", "Anne Hidalgo"), ("dbr:Paris", "Paris")], verbs=("is",)),
        s("London", 0, "Sadiq Khan is the mayor of London.",
          [("dbr:Sadiq_Khan", "Sadiq Khan"), ("dbr:London", "London")], verbs=("is",)),
        s("Madrid", 0, "Manuela Carmena is the mayor of Madrid.",
          [("dbr:Manuela_Carmena", "Manuela Carmena"), ("dbr:Madrid", "Madrid")], verbs=("is",)),
        # noise and near-misses to round out fifty sentences
        s("Paris", 1, "Paris is the capital of France.",
          [("dbr:Paris", "Paris"), ("dbr:France", "France")]),  # no verb tag on purpose
        s("Spain", 0, "Spain borders France.",
          [("dbr:Spain", "Spain"), ("dbr:France", "France")], verbs=("borders",)),
        s("Warsaw", 0, "Warsaw is a city.", [("dbr:Warsaw", "Warsaw")], verbs=("is",)),
        s("Smiljan", 0, "Smiljan lies in the hills.", [("dbr:Smiljan", "Smiljan")], verbs=("lies",)),
        s("Princeton", 0, "Princeton hosts a university.", [("dbr:Princeton", "Princeton")], verbs=("hosts",)),
        s("Madrid", 1, "Madrid, Madrid.", [("dbr:Madrid", "Madrid")]),
        s("London", 1, "London grew quickly.", [("dbr:London", "London")], verbs=("grew",)),
    ]
    assert len(rows) == 50, f"expected 50 corpus sentences, have {len(rows)}"
    return rows


CONFIG_TOML = """\
[paths]
kb = "kb.tsv"
labels = "labels.tsv"
hierarchy = "hierarchy.tsv"
embeddings = "embeddings.txt"
type_mapping = "type_mapping.tsv"
frame_aliases = "frame_aliases.tsv"
alignment_table = "table.json"

[params]
theta = 0.10
min_constraint_obs = 3
min_examples = 2
triple_limit = 1000
k = 1

[scorers]
enabled = ["align", "lexical", "kb", "neural"]

[neural]
stub = "neural_stub.json"
"""


def write_fixtures() -> None:
    OUT.mkdir(parents=True, exist_ok=True)

    kb_lines = [f"@prefix {n}: {iri}" for n, iri in sorted(PREFIXES.items())]
    kb_lines += ["\t".join(t) for t in FACTS]
    kb_lines += [f"{e}\trdf:type\t{c}" for e, c in sorted(TYPES.items())]
    (OUT / "kb.tsv").write_text("\n".join(kb_lines) + "\n")

    label_rows = [(iri, entity_label(iri)) for iri in sorted(TYPES)] + CLASS_LABELS
    label_rows += [("dbr:Radioactivity", "Radioactivity"), ("dbr:Alternating_Current", "Alternating Current")]
    (OUT / "labels.tsv").write_text("".join(f"{i}\t{l}\n" for i, l in label_rows))

    (OUT / "hierarchy.tsv").write_text("".join(f"{a}\t{b}\n" for a, b in HIERARCHY))
    (OUT / "type_mapping.tsv").write_text("".join(f"{a}\t{b}\n" for a, b in TYPE_MAPPING))
    (OUT / "frame_aliases.tsv").write_text("".join(f"{f}\t{a}\n" for f, a in FRAME_ALIASES))

    vectors = build_embeddings()
    lines = [f"{len(vectors)} {len(next(iter(vectors.values())))}"]
    for word in sorted(vectors):
        lines.append(word + " " + " ".join(f"{x:g}" for x in vectors[word]))
    (OUT / "embeddings.txt").write_text("\n".join(lines) + "\n")

    records, parses = build_ds()
    with open(OUT / "ds_examples.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    (OUT / "ds_parses.penman").write_text("\n\n".join(parses) + "\n")

    with open(OUT / "questions.jsonl", "w") as fh:
        for q in QUESTIONS:
            fh.write(json.dumps(q, sort_keys=True) + "\n")
    with open(OUT / "gold.jsonl", "w") as fh:
        for q in QUESTIONS:
            fh.write(json.dumps({"id": q["id"], "gold_relations": q["gold_relations"]}, sort_keys=True) + "\n")

    stub = build_stub()
    (OUT / "neural_stub.json").write_text(json.dumps(stub, indent=2, sort_keys=True) + "\n")

    with open(OUT / "corpus.jsonl", "w") as fh:
        for rec in build_corpus():
            fh.write(json.dumps(rec, sort_keys=True) + "\n")

    (OUT / "config.toml").write_text(CONFIG_TOML)


def verify() -> None:
    """Re-link every question and confirm the designed outcomes hold."""
    from amrlink.aggregate import evaluate
    from amrlink.alignment import build_table, load_aliases
    from amrlink.amr import parse_penman_file
    from amrlink.ds import read_examples
    from amrlink.kb import load_kb
    from amrlink.pipeline import (
        PipelineConfig, Resources, link_question, predictions_with_scorers, read_questions,
    )
    from amrlink.scorers import EmbeddingTable

    kb = load_kb(OUT / "kb.tsv", OUT / "labels.tsv", OUT / "hierarchy.tsv")
    emb = EmbeddingTable.load(OUT / "embeddings.txt")
    examples = read_examples(OUT / "ds_examples.jsonl")
    graphs = parse_penman_file((OUT / "ds_parses.penman").read_text())
    assert len(examples) == len(graphs), (len(examples), len(graphs))
    table = build_table(zip(examples, graphs), kb, emb=emb, aliases=load_aliases(OUT / "frame_aliases.tsv"))
    table.save(OUT / "table.json")

    config = PipelineConfig.from_file(OUT / "config.toml")
    resources = Resources.load(config)
    questions = read_questions(OUT / "questions.jsonl")
    gold = {q.id: set(q.gold_relations) for q in questions}

    results = {q.id: link_question(q, resources) for q in questions}
    full = {qid: set(res["predictions"]) for qid, res in results.items()}
    report = evaluate(full, gold)
    print("full system:", report.to_text().replace("\n", "  "))
    for qid in sorted(gold):
        if full[qid] != gold[qid]:
            print(f"  MISMATCH {qid}: predicted {sorted(full[qid])} vs gold {sorted(gold[qid])}")
            for t in results[qid]["triples"]:
                print("   ", t["predicate"], "->", t["ranked"][:3])
    assert report.f1 == 1.0, f"full-system F1 is {report.f1}, expected 1.0"

    ablated = {qid: predictions_with_scorers(res, ["lexical", "kb", "neural"], 1) for qid, res in results.items()}
    ablated_report = evaluate(ablated, gold)
    print("w/o align:  ", ablated_report.to_text().replace("\n", "  "))
    assert ablated_report.f1 < 1.0, "removing the alignment scorer must hurt"
    assert ablated[ALIGNMENT_CRITICAL] != gold[ALIGNMENT_CRITICAL]
    print("fixtures verified")


if __name__ == "__main__":
    write_fixtures()
    verify()
