#!/usr/bin/env python3
"""Rebuild the bundled language assets.

Trains the shipped trigram profiles from ``data/langid_training/*.txt``
and regenerates the held-out evaluation sentences (every grammatical
subject x predicate combination, 200 per language) used by the
acceptance suite.  Training prose and held-out sentences share no text.

Run from the repository root:

    python scripts/build_language_data.py
"""

from pathlib import Path

from opforensics.langid import build_profile, write_profile

ROOT = Path(__file__).resolve().parent.parent
TRAINING = ROOT / "data" / "langid_training"
HOLDOUT = ROOT / "data" / "langid_holdout"
PROFILES = ROOT / "src" / "opforensics" / "_data" / "profiles"

SUBJECTS = {
    "en": [
        "The local farmers", "Many young students", "Our new neighbours",
        "The city engineers", "Several older teachers", "The market traders",
        "Most train passengers", "The village children", "Those museum guides",
        "The harbour workers",
    ],
    "de": [
        "Die jungen Studenten", "Viele alte Freunde", "Unsere neuen Nachbarn",
        "Die müden Arbeiter", "Mehrere erfahrene Lehrer",
        "Die Händler auf dem Markt", "Die meisten Fahrgäste",
        "Die Kinder aus dem Dorf", "Die Gäste aus der Stadt",
        "Die fleißigen Bauern",
    ],
    "fr": [
        "Les jeunes étudiants", "Beaucoup de voisins", "Les vieux pêcheurs",
        "Les ouvriers fatigués", "Plusieurs enseignants",
        "Les marchands du quartier", "La plupart des voyageurs",
        "Les enfants du village", "Les invités de la ville",
        "Les agriculteurs prudents",
    ],
    "ru": [
        "Молодые студенты", "Наши новые соседи", "Старые рыбаки",
        "Усталые рабочие", "Некоторые учителя", "Торговцы на рынке",
        "Почти все пассажиры", "Дети из деревни", "Гости из города",
        "Осторожные крестьяне",
    ],
}

PREDICATES = {
    "en": [
        "have been waiting for the morning train since seven o'clock",
        "discussed the new school budget for more than two hours",
        "walked along the river before the heavy rain started",
        "will travel to the capital for the winter festival next week",
        "complained about the rising price of bread and butter",
        "planted two long rows of apple trees behind the old church",
        "listened carefully to the weather report on the radio",
        "prepared a warm meal for the visitors from the coast",
        "repaired the wooden bridge across the narrow stream",
        "voted against the plan to close the public library",
        "watched the football match in the crowded town square",
        "collected firewood for the long cold months ahead",
        "organised a small concert in the garden behind the school",
        "remembered the great flood that covered the lower fields",
        "studied the old maps of the valley in the quiet reading room",
        "sold fresh vegetables at the Saturday market near the harbour",
        "painted the fence around the playground a bright shade of green",
        "borrowed three novels and a history book from the library",
        "celebrated the harvest with music and dancing until midnight",
        "wrote a long letter to the newspaper about the broken streetlights",
    ],
    "de": [
        "haben gestern Abend lange über die Wahl gesprochen",
        "warten seit dem frühen Morgen auf den Zug in die Hauptstadt",
        "gingen vor dem schweren Regen am Fluss entlang spazieren",
        "werden nächste Woche zum Winterfest in die Hauptstadt fahren",
        "beschwerten sich über die steigenden Preise für Brot und Butter",
        "pflanzten zwei lange Reihen Apfelbäume hinter der alten Kirche",
        "hörten dem Wetterbericht im Radio aufmerksam zu",
        "bereiteten den Besuchern von der Küste ein warmes Essen zu",
        "reparierten die hölzerne Brücke über den schmalen Bach",
        "stimmten gegen den Plan, die öffentliche Bücherei zu schließen",
        "sahen das Fußballspiel auf dem vollen Marktplatz",
        "sammelten Brennholz für die langen kalten Monate",
        "veranstalteten ein kleines Konzert im Garten hinter der Schule",
        "erinnerten sich an das Hochwasser, das die unteren Felder bedeckte",
        "untersuchten die alten Karten des Tals im stillen Lesesaal",
        "verkauften frisches Gemüse auf dem Samstagsmarkt am Hafen",
        "strichen den Zaun um den Spielplatz in einem hellen Grün",
        "liehen sich drei Romane und ein Geschichtsbuch aus der Bücherei",
        "feierten die Ernte mit Musik und Tanz bis nach Mitternacht",
        "schrieben einen langen Brief an die Zeitung über die kaputten Laternen",
    ],
    "fr": [
        "ont longuement parlé du budget de l'école hier soir",
        "attendent le train du matin depuis sept heures sur le quai",
        "ont marché le long de la rivière avant la grosse pluie",
        "partiront la semaine prochaine au festival d'hiver de la capitale",
        "se sont plaints du prix croissant du pain et du beurre",
        "ont planté deux longues rangées de pommiers derrière la vieille église",
        "ont écouté avec attention le bulletin météo à la radio",
        "ont préparé un repas chaud pour les visiteurs de la côte",
        "ont réparé le pont de bois qui traverse le ruisseau étroit",
        "ont voté contre le projet de fermer la bibliothèque publique",
        "ont regardé le match de football sur la place bondée",
        "ont ramassé du bois pour les longs mois froids de l'hiver",
        "ont organisé un petit concert dans le jardin derrière l'école",
        "se souviennent de la grande crue qui couvrait les champs bas",
        "ont étudié les vieilles cartes de la vallée dans la salle de lecture",
        "ont vendu des légumes frais au marché du samedi près du port",
        "ont peint la clôture du terrain de jeux d'un vert très clair",
        "ont emprunté trois romans et un livre d'histoire à la bibliothèque",
        "ont fêté la récolte avec de la musique et des danses jusqu'à minuit",
        "ont écrit une longue lettre au journal sur les lampadaires cassés",
    ],
    "ru": [
        "вчера вечером долго говорили о школьном бюджете",
        "с раннего утра ждали поезд в столицу на холодном перроне",
        "гуляли вдоль реки перед сильным дождём",
        "на следующей неделе поедут на зимний праздник в столицу",
        "жаловались на растущие цены на хлеб и масло",
        "посадили два длинных ряда яблонь за старой церковью",
        "внимательно слушали прогноз погоды по радио",
        "приготовили горячий обед для гостей с побережья",
        "починили деревянный мост через узкий ручей",
        "голосовали против плана закрыть городскую библиотеку",
        "смотрели футбольный матч на людной площади",
        "собирали дрова на долгие холодные месяцы",
        "устроили небольшой концерт в саду за школой",
        "вспоминали большое наводнение, которое накрыло нижние поля",
        "изучали старые карты долины в тихом читальном зале",
        "продавали свежие овощи на субботнем рынке у гавани",
        "покрасили забор вокруг детской площадки в яркий зелёный цвет",
        "взяли в библиотеке три романа и книгу по истории",
        "праздновали урожай с музыкой и танцами до полуночи",
        "написали длинное письмо в газету о сломанных фонарях",
    ],
}


def main() -> None:
    HOLDOUT.mkdir(parents=True, exist_ok=True)
    PROFILES.mkdir(parents=True, exist_ok=True)
    for code in sorted(SUBJECTS):
        sentences = [
            f"{subject} {predicate}."
            for subject in SUBJECTS[code]
            for predicate in PREDICATES[code]
        ]
        short = [s for s in sentences if len(s) < 40]
        if short:
            raise SystemExit(f"{code}: sentences under 40 chars: {short[:3]}")
        out = HOLDOUT / f"{code}.txt"
        out.write_text("\n".join(sentences) + "\n", encoding="utf-8")
        print(f"{code}: {len(sentences)} held-out sentences -> {out}")

        training = (TRAINING / f"{code}.txt").read_text(encoding="utf-8")
        profile = build_profile(training, code)
        write_profile(profile, PROFILES / f"{code}.tsv")
        print(f"{code}: profile of {len(profile)} trigrams -> {PROFILES / (code + '.tsv')}")


if __name__ == "__main__":
    main()
