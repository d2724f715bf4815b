#!/usr/bin/env python3
"""Regenerates the committed test fixtures.

Deterministic by construction (fixed seeds, fixed orderings). Outputs:
  tests/fixtures/fixture60.jsonl       60-page dump exercising the ingest edge cases
  tests/fixtures/fixture60.xml         the same dump in MediaWiki export form
  tests/fixtures/gender/<lang>.jsonl   200 labeled biography stubs per language
  tests/fixtures/ingroup/{zh,en}.json  hand-labeled ranking fixtures
"""

import json
import os
import random
import xml.sax.saxutils as sax

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIX = os.path.join(ROOT, "tests", "fixtures")


# --- tokenizer mirror of src/strings.cpp ------------------------------------

def tokenize(text):
    tokens, cur = [], []
    for ch in text:
        if (ch.isascii() and ch.isalnum()) or not ch.isascii():
            cur.append(ch)
        elif cur:
            tokens.append("".join(cur))
            cur = []
    if cur:
        tokens.append("".join(cur))
    return tokens


def lower(s):
    out = []
    for ch in s:
        o = ord(ch)
        if ch.isascii():
            out.append(ch.lower())
        elif 0xC0 <= o <= 0xDE and o != 0xD7:  # Latin-1 supplement uppercase
            out.append(chr(o + 0x20))
        else:
            out.append(ch)
    return "".join(out)


def classify(text, lex):
    f = sum(1 for t in tokenize(text) if lower(t) in lex["female"])
    m = sum(1 for t in tokenize(text) if lower(t) in lex["male"])
    if f > m:
        return "female", f, m
    if m > f:
        return "male", f, m
    return "unknown", f, m


# --- fixture60 ---------------------------------------------------------------

def person(title, birth=None, death=None, gender="m", extra_cats=(), links=(), note=""):
    """links: list of (target, count, style) where style picks the wikilink form."""
    cats = []
    if birth is not None:
        cats.append(f"{-birth} BC births" if birth < 0 else f"{birth} births")
    if death is not None:
        cats.append(f"{-death} BC deaths" if death < 0 else f"{death} deaths")
    cats.extend(extra_cats)

    pron = {
        "m": ["He served his city and he kept his records.",
              "He traveled widely and his letters survive him."],
        "f": ["She ruled in her own right and she kept her court.",
              "She wrote of her times and her words survive her."],
        "u": ["The sources disagree about this figure.",
              "Few records of this figure survive."],
    }[gender]
    body = [f"{title} appears in the chronicles. {pron[0]}"]
    for target, count, style in links:
        for _ in range(count):
            if style == "plain":
                body.append(f"[[{target}]] is mentioned.")
            elif style == "pipe":
                body.append(f"The chronicle names [[{target}|a contemporary]].")
            elif style == "anchor":
                body.append(f"See [[{target}#Life]] for the era.")
            elif style == "underscore":
                body.append(f"Compare [[{target.replace(' ', '_')}]] as well.")
    body.append(pron[1])
    if note:
        body.append(note)
    return {"title": title, "ns": 0, "text": " ".join(body), "categories": cats}


def page(title, text, cats=(), ns=0):
    return {"title": title, "ns": ns, "text": text, "categories": list(cats)}


def redirect(title, target):
    return {"title": title, "ns": 0, "text": f"#REDIRECT [[{target}]]", "categories": []}


def build_fixture60():
    pages = []
    # -- ancient cluster (BC era)
    pages.append(person("Kubaba of Kish", -2450, -2380, "f", ("Sumerian queens",),
                        [("Lugal of Uruk", 2, "plain"), ("Enheduanna", 1, "plain")]))
    pages.append(person("Lugal of Uruk", -2440, -2360, "m", ("Sumerian kings",),
                        [("Kubaba of Kish", 1, "pipe"), ("Uruk", 1, "plain")]))
    pages.append(person("Enheduanna", -2285, -2250, "f", ("Akkadian poets",),
                        [("Sargon of Akkad", 1, "plain"), ("Kubaba of Kish", 1, "plain")]))
    pages.append(person("Sargon of Akkad", -2334, -2279, "m", ("Akkadian kings",),
                        [("Enheduanna", 2, "plain")]))
    pages.append(person("Ahmes the Scribe", -1680, -1620, "m", ("Egyptian mathematicians",),
                        [("Sargon of Akkad", 1, "plain")]))  # no overlap, edge must drop
    # -- classical cluster
    pages.append(person("Aristokles of Athens", -428, -348, "m", ("Greek philosophers",),
                        [("Dion of Syracuse", 1, "plain"), ("Athens", 1, "plain")]))
    pages.append(person("Dion of Syracuse", -408, -354, "m", ("Greek politicians",),
                        [("Aristokles of Athens", 1, "anchor"),
                         ("The Philosopher", 2, "plain")]))  # via redirect, merges to weight 3
    pages.append(person("Timaia of Sparta", -420, -360, "f", ("Spartan queens",),
                        [("Aristokles of Athens", 1, "plain")]))
    pages.append(person("Gaius Verus", -100, -44, "m", ("Roman consuls",),
                        [("Marcia Prima", 1, "plain"), ("Rome", 1, "plain")]))
    pages.append(person("Marcia Prima", -90, -20, "f", ("Roman women",),
                        [("Gaius Verus", 1, "underscore")]))
    pages.append(person("Laelia the Elder", 14, 80, "f", ("Roman orators",),
                        [("Gaius Verus", 1, "plain")]))  # no overlap, drops
    # -- late antique / medieval
    pages.append(person("Theodora of Nicaea", 500, 548, "f", ("Byzantine empresses",),
                        [("Prokopios the Monk", 1, "plain")]))
    pages.append(person("Prokopios the Monk", 505, 565, "m", ("Byzantine monks",),
                        [("Theodora of Nicaea", 3, "plain")]))
    pages.append(person("Adela of Verdun", 840, 905, "f", ("Frankish abbesses",),
                        [("Treaty of Verdun", 1, "plain"), ("Lothair the Scribe", 1, "plain")]))
    pages.append(person("Lothair the Scribe", 835, 890, "m", ("Frankish historians",),
                        [("Adela of Verdun", 1, "pipe")]))
    pages.append(person("Wu of Liang", 464, 549, "m", ("Chinese emperors",),
                        [("Prokopios the Monk", 1, "plain")]))
    pages.append(person("Komnene the Chronicler", 1083, 1153, "f", ("Byzantine historians",),
                        [("Alexios the General", 2, "plain")]))
    pages.append(person("Alexios the General", 1048, 1118, "m", ("Byzantine generals",),
                        [("Komnene the Chronicler", 1, "plain")]))
    # -- early modern
    pages.append(person("Isabella of Toledo", 1451, 1504, "f", ("Spanish queens",),
                        [("Columbus the Navigator", 2, "plain")]))
    pages.append(person("Columbus the Navigator", 1451, 1506, "m", ("Italian explorers",),
                        [("Isabella of Toledo", 1, "plain")]))
    pages.append(person("Mirabai the Poet", 1498, 1547, "f", ("Indian poets",),
                        [("Isabella of Toledo", 1, "plain")]))
    pages.append(person("Aemilia the Printer", 1500, None, "f", ("German printers",),
                        [("Printing Press", 1, "plain")], note="Her death year is unrecorded."))
    # imputed death 1570
    pages.append(person("Bartolome the Friar", 1484, 1566, "m", ("Spanish friars",),
                        [("Isabella of Toledo", 1, "plain"),
                         ("Columbus the Navigator", 1, "plain")]))
    # -- enlightenment / modern
    pages.append(person("Sophia the Astronomer", 1647, 1717, "f", ("German astronomers",),
                        [("Leibniz the Savant", 1, "plain")]))
    pages.append(person("Leibniz the Savant", 1646, 1716, "m", ("German philosophers",),
                        [("Sophia the Astronomer", 2, "plain")]))
    pages.append(person("Olympe the Pamphleteer", 1748, 1793, "f", ("French writers",),
                        [("Danton the Orator", 1, "plain")]))
    pages.append(person("Danton the Orator", 1759, 1794, "m", ("French politicians",),
                        [("Olympe the Pamphleteer", 1, "plain")]))
    pages.append(person("Ada the Analyst", 1815, 1852, "f", ("English mathematicians",),
                        [("Babbage the Engineer", 2, "plain")]))
    pages.append(person("Babbage the Engineer", 1791, 1871, "m", ("English engineers",),
                        [("Ada the Analyst", 2, "plain")]))
    pages.append(person("Clara the Composer", 1819, 1896, "f", ("German composers",),
                        [("Babbage the Engineer", 1, "plain")]))
    pages.append(person("Curie the Physicist", 1867, 1934, "f", ("Polish physicists",),
                        [("Einstein the Theorist", 1, "plain")]))
    pages.append(person("Einstein the Theorist", 1879, 1955, "m", ("German physicists",),
                        [("Curie the Physicist", 2, "plain")]))
    pages.append(person("Meitner the Chemist", 1878, 1968, "f", ("Austrian physicists",),
                        [("Einstein the Theorist", 1, "plain"),
                         ("Curie the Physicist", 1, "plain")]))
    pages.append(person("Turing the Logician", 1912, 1954, "m", ("English mathematicians",),
                        [("Babbage the Engineer", 1, "plain")]))  # no overlap, drops
    pages.append(person("Hopper the Programmer", 1906, 1992, "f", ("American scientists",),
                        [("Turing the Logician", 1, "plain")]))
    pages.append(person("Lispector the Novelist", 1920, None, "f", ("Brazilian writers",),
                        [("Hopper the Programmer", 1, "plain")], note="Still listed as living."))
    # modern birth, no death: possibly living
    # -- pathological records (all stay in the index, undated)
    pages.append(person("Janus the Unplaced", None, None, "m", ("Living people",),
                        [("Einstein the Theorist", 1, "plain")],
                        note="No dated categories exist for this person."))
    pages.append(person("Chronos the Impossible", 200, 150, "m", ("Greek seers",)))
    # death before birth: rejected at extraction
    pages.append(person("Methuselah of Ur", 100, 300, "m", ("Legendary elders",)))
    # span over 120 years: rejected
    pages.append(person("Duplicate Doe", 1800, 1870, "m", ("English clerks",)))
    pages.append(person("Duplicate Doe", 1800, 1860, "m", ("English clerks",),
                        [("Ada the Analyst", 1, "plain")], note="Corrected entry."))
    # later occurrence wins
    # -- redirects
    pages.append(redirect("The Philosopher", "Aristokles of Athens"))
    pages.append(redirect("The Navigator", "Columbus the Navigator"))
    pages.append(redirect("Old Alias", "Middle Alias"))
    pages.append(redirect("Middle Alias", "Aristokles of Athens"))  # chain: depth 2 from Old Alias
    pages.append(redirect("The Analyst", "Ada the Analyst"))
    # a page that links through the chain start (dropped) and the chain middle (kept)
    pages.append(person("Xenon the Minor", -400, -330, "m", ("Greek scribes",),
                        [("Old Alias", 1, "plain"), ("Middle Alias", 1, "plain")]))
    # -- non-person pages
    pages.append(page("Uruk", "Uruk was a city of [[Sumer]]. <!-- [[Kubaba of Kish]] hidden --> "
                              "Its walls were famous.", ("Ancient cities",)))
    pages.append(page("Athens", "Athens is a city in Greece. <nowiki>[[Aristokles of Athens]]"
                                "</nowiki> is not a real mention here.", ("Greek cities",)))
    pages.append(page("Rome", "Rome sits on the Tiber.", ("Italian cities",)))
    pages.append(page("Sumer", "Sumer was a region of Mesopotamia.", ("Ancient regions",)))
    pages.append(page("Treaty of Verdun", "The treaty divided the Frankish realm.",
                      ("Medieval treaties",)))
    pages.append(page("Printing Press", "The printing press spread movable type.",
                      ("Inventions",)))
    pages.append(page("Nile", "The Nile flows north.", ("Rivers",)))
    pages.append(page("Byzantium", "Byzantium stood on the Bosporus.", ("Ancient cities",)))
    pages.append(page("Alexandria", "Alexandria held the great library.", ("Egyptian cities",)))
    pages.append(page("Silk Road", "The Silk Road carried goods and ideas.", ("Trade routes",)))
    pages.append(page("Agora", "An agora was a gathering place.", ("Greek architecture",)))
    pages.append(page("Papyrus", "Papyrus carried the old records.", ("Writing materials",)))
    pages.append(page("Talk:Uruk", "Discussion page, must be filtered by namespace.", (), ns=1))
    assert len(pages) == 60, f"expected 60 pages, got {len(pages)}"
    return pages


def write_fixture60(pages):
    with open(os.path.join(FIX, "fixture60.jsonl"), "w", encoding="utf-8") as f:
        for p in pages:
            f.write(json.dumps(p, ensure_ascii=False) + "\n")

    # MediaWiki export flavor of the same dump; categories appear as category
    # links at the end of the text, redirects get a <redirect/> element.
    with open(os.path.join(FIX, "fixture60.xml"), "w", encoding="utf-8") as f:
        f.write('<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" version="0.10">\n')
        f.write("  <siteinfo>\n    <sitename>Fixturepedia</sitename>\n"
                "    <namespaces>\n      <namespace key=\"0\" />\n"
                "      <namespace key=\"1\">Talk</namespace>\n    </namespaces>\n  </siteinfo>\n")
        for i, p in enumerate(pages):
            text = p["text"]
            for cat in p["categories"]:
                text += f" [[Category:{cat}]]"
            f.write("  <page>\n")
            f.write(f"    <title>{sax.escape(p['title'])}</title>\n")
            f.write(f"    <ns>{p['ns']}</ns>\n")
            f.write(f"    <id>{i + 1}</id>\n")
            if p["text"].startswith("#REDIRECT"):
                target = p["text"].split("[[")[1].split("]]")[0]
                f.write(f'    <redirect title="{sax.escape(target, {chr(34): "&quot;"})}" />\n')
            f.write("    <revision>\n")
            f.write(f"      <id>{1000 + i}</id>\n")
            f.write("      <timestamp>2014-01-01T00:00:00Z</timestamp>\n")
            f.write(f"      <text xml:space=\"preserve\">{sax.escape(text)}</text>\n")
            f.write("    </revision>\n")
            f.write("  </page>\n")
        f.write("</mediawiki>\n")


# --- gender fixtures ----------------------------------------------------------

NAMES_F = ["Maria", "Ana", "Clara", "Sofia", "Elena", "Luisa", "Teresa", "Ines", "Marta", "Rosa",
           "Irene", "Alma", "Vera", "Nora", "Lidia", "Paula", "Celia", "Delia", "Olga", "Rita"]
NAMES_M = ["Carlos", "Pedro", "Juan", "Luis", "Jorge", "Pablo", "Diego", "Andres", "Hugo",
           "Bruno", "Oscar", "Ivan", "Mario", "Felix", "Victor", "Ramon", "Tomas", "Emil",
           "Stefan", "Anton"]
SURNAMES = ["Almeida", "Vargas", "Keller", "Brandt", "Moreau", "Silva", "Fischer", "Romero",
            "Costa", "Weiss", "Navarro", "Lang", "Pires", "Sommer", "Duarte", "Vidal", "Kranz",
            "Bauer", "Reis", "Falk"]

# Per-language sentence templates. {N} = full name, {S} = surname. The clear
# templates carry a strong pronoun majority; "hard" ones talk mostly about a
# differently-gendered relative; "tie" ones balance exactly.
TEMPLATES = {
    "en": {
        "f": ["{N} was a painter. She studied in the capital and her early work made her "
              "reputation. She later taught, and her students remembered her fondly.",
              "{N} served as a judge. She wrote opinions praised for clarity, and her rulings "
              "shaped the law. She retired to the coast, where she kept her library.",
              "{N} sang on many stages. She toured widely and her recordings made her famous. "
              "Critics admired her range and she inspired younger singers."],
        "m": ["{N} was an engineer. He built bridges and his designs carried his name. He "
              "lectured often, and his students remembered him well.",
              "{N} farmed and wrote. He described his valley and his seasons, and he published "
              "his notes late in his life.",
              "{N} led an expedition. He mapped the river and his journals record his crossing. "
              "He returned home, where he wrote his memoir."],
        "hard_f": ["{N} is remembered through the papers of her husband. He kept his diaries "
                   "daily, he noted his debts, and he praised his own bargains in them.",
                   "{N} appears briefly in accounts of her brother. He ran his workshop, he "
                   "trained his apprentices, and he signed his pieces with his mark."],
        "hard_m": ["{N} is known mostly from letters of his wife. She managed her estate, she "
                   "kept her accounts, and she recorded her visitors in her journal.",
                   "{N} survives in the memoir of his sister. She described her travels, she "
                   "listed her correspondents, and she dated her entries carefully."],
        "tie_f": ["{N} married a cartographer. She drew the coastlines and he engraved the "
                  "plates.",
                  "{N} kept a printing house with a partner. She set the type and he ran the "
                  "press."],
        "tie_m": ["{N} worked beside a weaver. He dyed the wool and she wove the cloth.",
                  "{N} shared a practice with a colleague. He saw the patients and she mixed "
                  "the remedies."],
    },
    "de": {
        "f": ["{N} war Malerin. Sie studierte in der Hauptstadt und ihre frühen Bilder machten "
              "sie bekannt. Sie lehrte später, und ihre Schüler schätzten sie sehr.",
              "{N} war Richterin. Sie schrieb klare Urteile, und ihre Entscheidungen prägten "
              "das Recht. Sie zog an die Küste und ordnete dort ihre Bibliothek.",
              "{N} sang auf vielen Bühnen. Sie reiste weit und ihre Aufnahmen machten sie "
              "berühmt. Man bewunderte ihre Stimme und sie förderte junge Talente."],
        "m": ["{N} war Ingenieur. Er baute Brücken und seine Entwürfe trugen seinen Namen. Er "
              "hielt Vorlesungen, und man erinnerte sich gern an ihn.",
              "{N} war Landwirt und Autor. Er beschrieb sein Tal und seine Jahreszeiten, und er "
              "veröffentlichte seine Notizen spät in seinem Leben.",
              "{N} führte eine Expedition. Er kartierte den Fluss und seine Tagebücher "
              "beschreiben seinen Weg. Er kehrte heim und schrieb seinen Bericht."],
        "hard_f": ["{N} ist durch die Papiere des Mannes bekannt. Er führte seine Bücher, er "
                   "notierte seine Schulden, und er lobte seinen Handel darin.",
                   "{N} erscheint kurz in Berichten des Bruders. Er leitete seine Werkstatt, er "
                   "bildete seine Lehrlinge aus, und er signierte seinen Namen."],
        "hard_m": ["{N} ist vor allem aus Briefen der Frau bekannt. Sie verwaltete ihr Gut, sie "
                   "führte ihre Rechnungen, und sie notierte ihre Gäste.",
                   "{N} überlebt im Bericht der Schwester. Sie beschrieb ihre Reisen, sie "
                   "ordnete ihre Briefe, und sie datierte ihre Einträge."],
        "tie_f": ["{N} heiratete einen Kartographen. Sie zeichnete die Küsten und er stach die "
                  "Platten.",
                  "{N} führte eine Druckerei mit einem Partner. Sie setzte die Lettern und er "
                  "bediente die Presse."],
        "tie_m": ["{N} arbeitete neben einer Weberin. Er färbte die Wolle und sie webte das "
                  "Tuch.",
                  "{N} teilte eine Praxis mit einer Kollegin. Er empfing die Kranken und sie "
                  "mischte die Mittel."],
    },
    "es": {
        "f": ["{N} fue pintora. Ella estudió en la capital y fue reconocida como actriz del "
              "color; ella enseñó después y fue querida.",
              "{N} fue jueza. Ella escribió sentencias claras, ella formó a otras juristas y "
              "fue respetada como hija ilustre de su ciudad.",
              "{N} cantó en muchos escenarios. Ella viajó lejos, ella grabó discos y fue "
              "celebrada; su esposa de escena era la música misma."],
        "m": ["{N} fue ingeniero. Él construyó puentes, él dio clases y fue recordado como "
              "hijo ilustre de su pueblo.",
              "{N} fue agricultor y autor. Él describió su valle, él publicó sus notas y fue "
              "leído por ellos durante años.",
              "{N} dirigió una expedición. Él cartografió el río, él volvió a casa y fue "
              "nombrado rey del mapa por sus amigos."],
        "hard_f": ["{N} es recordada por los papeles de su esposo. Él llevaba sus cuentas, él "
                   "anotaba sus deudas y él elogiaba sus tratos.",
                   "{N} aparece en las crónicas de su hijo. Él dirigía el taller, él firmaba "
                   "las piezas y él enseñaba a ellos."],
        "hard_m": ["{N} se conoce por las cartas de su esposa. Ella administraba la hacienda, "
                   "ella llevaba las cuentas y ella recibía a ellas.",
                   "{N} sobrevive en la memoria de su hija. Ella describió los viajes, ella "
                   "ordenó las cartas y ella fechó todo."],
        "tie_f": ["{N} se casó con un cartógrafo. Ella dibujaba las costas y él grababa las "
                  "planchas.",
                  "{N} fundó una imprenta con un socio. Ella componía los tipos y él movía la "
                  "prensa."],
        "tie_m": ["{N} trabajó junto a una tejedora. Él teñía la lana y ella tejía el paño.",
                  "{N} compartió consulta con una colega. Él veía a los enfermos y ella "
                  "preparaba los remedios."],
    },
    "pt": {
        "f": ["{N} foi pintora. Ela estudou na capital e a obra dela fez fama; ela ensinou "
              "depois e foi lembrada como filha querida da cidade.",
              "{N} foi juíza. Ela escreveu sentenças claras, ela formou juristas e a clareza "
              "dela marcou o direito.",
              "{N} cantou em muitos palcos. Ela viajou longe, ela gravou discos e a voz dela "
              "foi celebrada como a de uma rainha."],
        "m": ["{N} foi engenheiro. Ele construiu pontes, ele deu aulas e o nome dele ficou nos "
              "projetos; foi lembrado como filho ilustre.",
              "{N} foi lavrador e autor. Ele descreveu o vale, ele publicou as notas e o "
              "caderno dele foi lido por eles durante anos.",
              "{N} chefiou uma expedição. Ele mapeou o rio, ele voltou e o relato dele o fez "
              "rei do mapa entre amigos."],
        "hard_f": ["{N} é lembrada pelos papéis do esposo. Ele guardava as contas, ele anotava "
                   "as dívidas e o diário dele elogia os negócios.",
                   "{N} aparece nas crônicas do filho. Ele dirigia a oficina, ele assinava as "
                   "peças e o nome dele ficou nas obras."],
        "hard_m": ["{N} é conhecido pelas cartas da esposa. Ela administrava a fazenda, ela "
                   "guardava as contas e o diário dela registra tudo.",
                   "{N} sobrevive na memória da filha. Ela descreveu as viagens, ela ordenou "
                   "as cartas e a letra dela data cada página."],
        "tie_f": ["{N} casou com um cartógrafo. Ela desenhava as costas e ele gravava as "
                  "chapas.",
                  "{N} fundou uma tipografia com um sócio. Ela compunha os tipos e ele movia a "
                  "prensa."],
        "tie_m": ["{N} trabalhou ao lado de uma tecelã. Ele tingia a lã e ela tecia o pano.",
                  "{N} dividiu o consultório com uma colega. Ele via os doentes e ela "
                  "preparava os remédios."],
    },
}


def build_gender_fixture(lang, lex, rng):
    """182 clear + 12 opposite-majority + 6 ties = accuracy 0.91 by design."""
    t = TEMPLATES[lang]
    records = []

    def name(pool):
        return f"{rng.choice(pool)} {rng.choice(SURNAMES)}"

    for i in range(91):
        records.append({"text": t["f"][i % len(t["f"])].format(N=name(NAMES_F)),
                        "gender": "female", "expect": "female"})
        records.append({"text": t["m"][i % len(t["m"])].format(N=name(NAMES_M)),
                        "gender": "male", "expect": "male"})
    for i in range(6):
        records.append({"text": t["hard_f"][i % len(t["hard_f"])].format(N=name(NAMES_F)),
                        "gender": "female", "expect": "male"})
        records.append({"text": t["hard_m"][i % len(t["hard_m"])].format(N=name(NAMES_M)),
                        "gender": "male", "expect": "female"})
    for i in range(3):
        records.append({"text": t["tie_f"][i % len(t["tie_f"])].format(N=name(NAMES_F)),
                        "gender": "female", "expect": "unknown"})
        records.append({"text": t["tie_m"][i % len(t["tie_m"])].format(N=name(NAMES_M)),
                        "gender": "male", "expect": "unknown"})
    assert len(records) == 200

    correct = 0
    for rec in records:
        got, f, m = classify(rec["text"], lex)
        assert got == rec["expect"], \
            f"{lang}: template produced {got} (f={f}, m={m}), wanted {rec['expect']}: {rec['text']!r}"
        if got == rec["gender"]:
            correct += 1
    accuracy = correct / len(records)
    assert accuracy == 0.91, f"{lang}: accuracy {accuracy}"

    rng.shuffle(records)
    path = os.path.join(FIX, "gender", f"{lang}.jsonl")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps({"text": rec["text"], "gender": rec["gender"]},
                               ensure_ascii=False) + "\n")
    return accuracy


# --- in-group ranking fixtures -------------------------------------------------

def build_ingroup():
    os.makedirs(os.path.join(FIX, "ingroup"), exist_ok=True)
    zh_entries = [{"title": f"Emperor {i} of the Fixture", "pagerank": 0.02, "indegree": 50 - i,
                   "categories": ["Chinese emperors"]} for i in range(1, 49)]
    zh_entries.append({"title": "Napoleon III", "pagerank": 0.01, "indegree": 1,
                       "categories": ["French emperors"]})
    zh_entries.append({"title": "Tokugawa Ieyasu", "pagerank": 0.01, "indegree": 1,
                       "categories": ["Japanese shoguns"]})
    with open(os.path.join(FIX, "ingroup", "zh.json"), "w", encoding="utf-8") as f:
        json.dump({"sphere": {"lang": "zh", "in_group": ["chinese"]},
                   "entries": zh_entries}, f, ensure_ascii=False, indent=1)

    en_groups = (["English monarchs"] * 4 + ["American politicians"] * 3 +
                 ["British writers"] * 3)
    others = (["Roman emperors"] * 10 + ["Greek philosophers"] * 8 +
              ["Egyptian pharaohs"] * 7 + ["Chinese emperors"] * 6 +
              ["French politicians"] * 5 + ["German composers"] * 4)
    en_entries = []
    for i, cat in enumerate(en_groups + others, start=1):
        en_entries.append({"title": f"Figure {i}", "pagerank": 0.03 - i * 1e-4,
                           "indegree": 60 - i, "categories": [cat]})
    assert len(en_entries) == 50
    with open(os.path.join(FIX, "ingroup", "en.json"), "w", encoding="utf-8") as f:
        json.dump({"sphere": {"lang": "en",
                              "in_group": ["english", "british", "american"]},
                   "entries": en_entries}, f, ensure_ascii=False, indent=1)


def main():
    os.makedirs(FIX, exist_ok=True)
    write_fixture60(build_fixture60())
    for lang in ["en", "de", "es", "pt"]:
        with open(os.path.join(ROOT, "data", "lexicons", "gender", f"{lang}.json"),
                  encoding="utf-8") as f:
            raw = json.load(f)
        lex = {"female": set(raw["female"]), "male": set(raw["male"])}
        seed = 1234 + sum(ord(c) for c in lang)
        acc = build_gender_fixture(lang, lex, random.Random(seed))
        print(f"gender fixture {lang}: accuracy {acc}")
    build_ingroup()
    print("fixtures written")


if __name__ == "__main__":
    main()
