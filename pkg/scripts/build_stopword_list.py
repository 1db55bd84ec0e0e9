#!/usr/bin/env python3
"""Regenerate the bundled stopword files.

The English list is the usual function-word inventory passed through
the package stemmer (entries must already be stems), plus platform
noise like the bare retweet marker.  The optional German, French and
Russian lists are plain lowercase words; non-English tokens are not
stemmed by the pipeline, so the words stand as their own stems.

Run from the repository root:

    python scripts/build_stopword_list.py
"""

from pathlib import Path

from opforensics.textproc import stem

OUT = Path(__file__).resolve().parent.parent / "src" / "opforensics" / "_data" / "stopwords"

ENGLISH_WORDS = """
a about above after again against all am an and any are aren't as at be
because been before being below between both but by can't cannot could
couldn't did didn't do does doesn't doing don't down during each few for
from further had hadn't has hasn't have haven't having he he'd he'll he's
her here here's hers herself him himself his how how's i i'd i'll i'm
i've if in into is isn't it it's its itself let's me more most mustn't my
myself no nor not of off on once only or other ought our ours ourselves
out over own same shan't she she'd she'll she's should shouldn't so some
such than that that's the their theirs them themselves then there there's
these they they'd they'll they're they've this those through to too under
until up very was wasn't we we'd we'll we're we've were weren't what
what's when when's where where's which while who who's whom why why's
with won't would wouldn't you you'd you'll you're you've your yours
yourself yourselves will just now get got like one two also via amp rt
""".split()

GERMAN_WORDS = """
aber alle als also am an auch auf aus bei bin bis bist da damit dann der
die das den dem des deine dein dich dir doch dort du durch ein eine einem
einen einer eines er es euer eure für hatte haben hat hier hin hinter ich
ihr ihre im in ist ja jede jedem jeden jeder jedes kann kein keine können
machen mein meine mit muss nach nicht nichts noch nun nur ob oder ohne
sehr sein seine sich sie sind so über um und uns unser unter vom von vor
wann warum was weiter weitere wenn wer werde werden wie wieder will wir
wird wirst wo zu zum zur
""".split()

FRENCH_WORDS = """
au aux avec ce ces dans de des du elle en et eux il ils je la le les leur
lui ma mais me même mes moi mon ne nos notre nous on ou où par pas pour
qu que qui sa se ses son sur ta te tes toi ton tu un une vos votre vous
c'est d'un d'une est sont était été avoir être fait comme plus tout tous
toute toutes autre autres aussi bien encore déjà
""".split()

RUSSIAN_WORDS = """
и в во не что он на я с со как а то все она так его но да ты к у же вы
за бы по только её мне было вот от меня ещё нет о из ему теперь когда
даже ну вдруг ли если уже или ни быть был него до вас нибудь опять уж
вам ведь там потом себя ничего ей может они тут где есть надо ней для мы
тебя их чем была сам чтоб без будто чего раз тоже себе под будет ж тогда
кто этот того потому этого какой совсем ним здесь этом один почти мой
тем чтобы нее сейчас были куда зачем всех никогда можно при об хотя
""".split()


def _write(path: Path, entries, header: str) -> None:
    lines = [f"# {header}", "# one stem per line"]
    lines.extend(sorted(set(entries)))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{path}: {len(set(entries))} entries")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    stems = [stem(word) for word in ENGLISH_WORDS]
    _write(OUT / "english.txt", stems, "English stopword stems (default list)")
    _write(OUT / "german.txt", GERMAN_WORDS, "German stopwords (optional plug-in)")
    _write(OUT / "french.txt", FRENCH_WORDS, "French stopwords (optional plug-in)")
    _write(OUT / "russian.txt", RUSSIAN_WORDS, "Russian stopwords (optional plug-in)")


if __name__ == "__main__":
    main()
