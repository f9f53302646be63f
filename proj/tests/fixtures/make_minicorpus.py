#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The Logoscope Authors
"""Generates the bundled two-day mini-corpus used by the end-to-end tests.

Day one is the reviewed history the ranker trains on. Day two is the batch
under test. Both are served from local files through RSS feeds. Every word
outside the planted lists is checked against the shipped lexicon.
"""

import argparse
import json
import random
import re
import sys
import unicodedata
from email.utils import format_datetime
from datetime import datetime, timezone
from pathlib import Path
from xml.sax.saxutils import escape

HERE = Path(__file__).resolve().parent
LEXICON = HERE.parents[1] / "data" / "lexicon" / "fr-forms.txt"

JOURNALS = [
    ("Le Courrier du Matin", "courrier"),
    ("La Gazette des Plaines", "gazette"),
    ("Le Veilleur Hebdo", "veilleur"),
]

POOL = {
    "economie": [
        "La banque centrale a maintenu ses taux malgré la pression des marchés financiers.",
        "Les investisseurs attendent une baisse de l'inflation avant la fin de l'année.",
        "Le budget de l'État prévoit une hausse modérée des dépenses publiques.",
        "Plusieurs entreprises du secteur industriel annoncent des résultats en recul.",
        "Le chômage reste stable selon les derniers chiffres publiés par le ministère.",
        "Les syndicats réclament une augmentation des salaires dans la fonction publique.",
        "La croissance économique du pays dépend largement de la consommation des ménages.",
        "Le marché immobilier ralentit dans les grandes villes depuis le printemps.",
        "Les exportations agricoles ont progressé grâce à une récolte abondante.",
        "La dette publique atteint un niveau que les économistes jugent préoccupant.",
        "Le gouvernement souhaite réduire les impôts des petites entreprises.",
        "Les actionnaires du groupe ont approuvé la fusion lors de l'assemblée générale.",
        "Le prix de l'énergie pèse sur le pouvoir d'achat des familles modestes.",
        "Les banques régionales proposent de nouveaux crédits aux jeunes agriculteurs.",
        "La bourse de Paris a terminé la semaine en légère hausse.",
        "Le commerce de détail profite du retour des clients dans les centres villes.",
        "Les petites entreprises dénoncent des délais de paiement trop longs.",
        "Le ministre de l'économie présentera son plan de relance le mois prochain.",
        "La concurrence internationale oblige les usines à moderniser leurs équipements.",
        "Le déficit commercial se creuse en raison de la facture énergétique.",
        "Les marchés financiers réagissent avec prudence aux annonces de la banque.",
        "Une partie des bénéfices sera reversée aux salariés sous forme de prime.",
    ],
    "politique": [
        "Le président de la République a reçu les chefs des partis au palais.",
        "Les députés ont adopté le projet de loi après un long débat.",
        "Le Sénat examinera le texte au cours de la prochaine session.",
        "L'opposition dénonce une réforme préparée sans véritable concertation.",
        "Le Premier ministre défend sa politique devant l'Assemblée nationale.",
        "Les élections municipales auront lieu au printemps dans toutes les communes.",
        "Plusieurs maires demandent davantage de moyens pour les services publics.",
        "Le parti majoritaire prépare un congrès pour désigner sa nouvelle direction.",
        "Les électeurs semblent partagés sur la question de la réforme des retraites.",
        "Le conseil régional a voté un budget consacré aux transports scolaires.",
        "La ministre de la justice souhaite simplifier les procédures judiciaires.",
        "Les sondages indiquent une progression des abstentionnistes dans les campagnes.",
        "Le gouvernement a présenté une nouvelle loi sur la sécurité intérieure.",
        "Les sénateurs proposent plusieurs amendements au texte du gouvernement.",
        "La campagne électorale commence officiellement dans deux semaines.",
        "Le chef de l'État a promis une consultation des citoyens sur ce sujet.",
        "Les candidats présentent leurs programmes lors de réunions publiques.",
        "Le débat parlementaire a été marqué par de vives tensions entre les groupes.",
        "La commission des lois a entendu le ministre pendant plusieurs heures.",
        "Les partis de gauche cherchent une alliance pour les prochaines élections.",
        "Le vote du budget reste incertain faute de majorité absolue.",
        "Une motion de censure a été déposée par les groupes de l'opposition.",
    ],
    "religion": [
        "L'évêque a célébré une messe en mémoire des victimes de la tempête.",
        "Les responsables religieux appellent au dialogue entre les communautés.",
        "La laïcité reste un principe fondamental de la vie publique.",
        "Les fidèles se sont rassemblés devant la cathédrale pour la fête de Pâques.",
        "Le pape a publié un message sur la solidarité avec les plus pauvres.",
        "Les associations de quartier organisent des rencontres entre croyants et non croyants.",
        "La question de la place des religions dans l'école divise les familles.",
        "Plusieurs églises rurales ont besoin de travaux de restauration urgents.",
        "Le dialogue entre les religions favorise la paix sociale dans les villes.",
        "Les croyances populaires et les traditions anciennes attirent de nombreux chercheurs.",
        "La mosquée du quartier accueille chaque semaine des cours de langue.",
        "Les mouvements religieux jouent un rôle important dans l'aide sociale.",
        "La société française connaît une baisse de la pratique religieuse.",
        "Les jeunes générations expriment une spiritualité plus personnelle.",
        "Le prêtre de la paroisse a ouvert les portes de l'église aux sans abri.",
        "La liberté de conscience est garantie par la constitution.",
        "Les rites funéraires évoluent avec les habitudes de la société.",
        "Un colloque sur la mythologie et les croyances antiques se tient à l'université.",
        "Les communautés religieuses participent à la distribution de repas.",
        "La famille reste au centre des valeurs défendues par les associations.",
    ],
    "defense": [
        "L'armée de terre a engagé de nouveaux soldats dans l'opération extérieure.",
        "Le ministère des armées prévoit une hausse du budget militaire.",
        "Les militaires ont participé à un exercice conjoint avec leurs alliés.",
        "La marine nationale a lancé la construction d'un nouveau sous-marin.",
        "Les forces spéciales ont été déployées dans une région instable.",
        "Le chef d'état-major a présenté les besoins de l'armée devant les députés.",
        "La menace terroriste reste élevée selon les services de renseignement.",
        "Les industriels de la défense espèrent de nouvelles commandes d'avions.",
        "L'alliance atlantique renforce sa présence aux frontières orientales.",
        "Les soldats blessés au combat recevront une décoration lors d'une cérémonie.",
        "La sécurité des frontières mobilise des moyens humains considérables.",
        "Une mission de maintien de la paix a été prolongée de six mois.",
        "Les troupes ont quitté la base militaire après plusieurs années de présence.",
        "Le conflit armé a provoqué le départ de milliers de réfugiés.",
        "Les armes livrées aux alliés font l'objet d'un contrôle strict.",
        "La guerre dans cette région inquiète les diplomates européens.",
        "Un plan de modernisation des équipements militaires a été adopté.",
        "Les réservistes seront davantage sollicités pour la protection du territoire.",
        "Le ministre des armées a visité les troupes stationnées à l'étranger.",
        "Les attentats ont conduit au renforcement du dispositif de sécurité.",
    ],
    "sport": [
        "L'équipe nationale de football a remporté son match de qualification.",
        "Le joueur a marqué deux buts lors de la seconde période.",
        "Les supporters ont envahi le stade pour fêter la victoire.",
        "L'entraîneur a annoncé la liste des joueurs sélectionnés pour la coupe.",
        "La course cycliste traversera plusieurs villages de montagne.",
        "Le championnat de rugby reprend après une courte pause hivernale.",
        "La nageuse a battu le record national lors des championnats.",
        "Les jeux olympiques attireront des millions de visiteurs dans la capitale.",
        "Le club a recruté un attaquant venu du championnat italien.",
        "La finale du tournoi de tennis se jouera dimanche après midi.",
        "Les athlètes se préparent pour les épreuves du marathon.",
        "Le match a été interrompu en raison de la pluie.",
        "Les jeunes joueurs du centre de formation ont impressionné l'entraîneur.",
        "La fédération a sanctionné le club pour le comportement de ses supporters.",
        "Le gardien a réalisé plusieurs arrêts décisifs en fin de match.",
        "L'équipe féminine de handball se qualifie pour les demi finales.",
        "La saison sportive se termine par une fête dans le stade municipal.",
        "Le coureur a abandonné après une chute dans la descente.",
        "Le public a salué la performance des joueurs malgré la défaite.",
        "Les sportifs amateurs participent nombreux à la course du dimanche.",
    ],
    "culture": [
        "Le festival de musique a accueilli des milliers de spectateurs cet été.",
        "Le musée présente une exposition consacrée aux peintres impressionnistes.",
        "Le roman de cette jeune romancière a reçu un prix littéraire prestigieux.",
        "La pièce de théâtre sera jouée tout le mois dans la salle municipale.",
        "Le film a obtenu un grand succès dans les salles de cinéma.",
        "Les bibliothèques proposent des ateliers de lecture pour les enfants.",
        "Le chanteur prépare un nouvel album après plusieurs années de silence.",
        "L'opéra de la ville restaure ses décors historiques.",
        "Les artistes locaux exposent leurs tableaux dans la galerie du centre.",
        "Le réalisateur a présenté son dernier film au festival de Cannes.",
        "La saison culturelle propose des concerts gratuits dans les parcs.",
        "Les éditeurs constatent une hausse des ventes de livres pour la jeunesse.",
        "Le conservatoire accueille de jeunes musiciens venus de toute la région.",
        "La danse contemporaine attire un public de plus en plus nombreux.",
        "Le patrimoine architectural de la ville fait l'objet d'une restauration.",
        "Les journées du patrimoine ont attiré de nombreux visiteurs.",
        "Une chanteuse a rendu hommage aux grands poètes du siècle dernier.",
        "La télévision publique diffusera une série tirée de ce roman.",
        "Le metteur en scène adapte une tragédie classique pour le jeune public.",
        "Les spectateurs ont applaudi longuement les comédiens à la fin de la pièce.",
    ],
    "sante": [
        "L'hôpital manque de médecins et d'infirmières pour assurer les soins.",
        "Les autorités sanitaires recommandent la vaccination des personnes âgées.",
        "Une épidémie de grippe touche plusieurs régions depuis le début de l'hiver.",
        "Les médecins généralistes alertent sur la pénurie de certains médicaments.",
        "La recherche médicale progresse dans le traitement des maladies rares.",
        "Le ministère de la santé lance une campagne de prévention contre le tabac.",
        "Les patients attendent parfois plusieurs mois pour obtenir un rendez-vous.",
        "Les urgences de l'hôpital sont saturées pendant les week-ends.",
        "Une étude montre les effets positifs de l'activité physique sur la santé.",
        "Les pharmaciens pourront bientôt prescrire certains traitements.",
        "La santé mentale des jeunes inquiète les professionnels du secteur.",
        "Le virus circule davantage dans les écoles en cette période.",
        "Les infirmières réclament une meilleure reconnaissance de leur travail.",
        "Un nouveau centre de soins a ouvert ses portes dans le quartier.",
        "Les chercheurs ont identifié une molécule prometteuse contre le cancer.",
        "Les maladies chroniques représentent une part croissante des dépenses de santé.",
        "La prévention reste le meilleur moyen de réduire les risques.",
        "Les médecins recommandent de boire beaucoup d'eau pendant la canicule.",
        "Le système de santé doit faire face au vieillissement de la population.",
        "Les cliniques privées accueillent une partie des patients des hôpitaux publics.",
    ],
}

# Sentences carrying planted forms. Each entry names the form, the article it
# goes to, the paragraph index and whether the form is a positive.
DAY1_SPECIAL = [
    # positives
    ("lumbersexuel", "Le style lumbersexuel séduit les jeunes citadins des grandes villes.", True),
    ("normcore", "La mode normcore privilégie des vêtements simples et discrets.", True),
    ("consommatoire", "Les économistes critiquent un modèle consommatoire qui épuise les ressources.", True),
    ("franco-planétaire", "Le projet se veut une aventure franco-planétaire pour la recherche.", True),
    ("kill-billeuse", "La candidate se présente comme une kill-billeuse prête à tout renverser.", True),
    ("startuppeuse", "Une jeune startuppeuse a levé des fonds auprès de la banque régionale.", True),
    ("complotisme", "Le complotisme progresse sur les réseaux selon les chercheurs.", True),
    ("surtourisme", "Le surtourisme menace les villages de montagne pendant l'été.", True),
    ("complotisme", "Les enseignants apprennent aux élèves à repérer le complotisme.", True),
    ("surtourisme", "La ville veut limiter le surtourisme dans le centre historique.", True),
    ("démondialisation", "Certains dirigeants plaident pour une démondialisation des échanges.", True),
    ("hyperconnectivité", "L'hyperconnectivité des adolescents inquiète les médecins.", True),
    # negatives: typos
    ("gouvernment", "Le gouvernment a présenté son projet devant les députés.", False),
    ("parlemnt", "Le parlemnt devra se prononcer avant la fin du mois.", False),
    ("economqiue", "La situation economqiue reste fragile selon le ministère.", False),
    ("hôpitall", "Les patients de l'hôpitall attendent des renforts.", False),
    # negatives: proper nouns
    ("Kerbrat", "Selon Maëlle Kerbrat, directrice de l'agence, la situation reste stable.", False),
    ("Maëlle", None, False),
    ("Vasseurville", "Les habitants de Vasseurville ont voté pour la première fois.", False),
    ("Dufrenoy", "Le député Dufrenoy a déposé une proposition de loi.", False),
    ("Tchakaloff", "Le ministre Tchakaloff a reçu les représentants des syndicats.", False),
    ("Ploumanac", "Le festival de Ploumanac a attiré de nombreux visiteurs.", False),
    # negatives: English and foreign words
    ("workflow", "Les salariés doivent adopter un nouveau workflow dans les bureaux.", False),
    ("roadmap", "La direction a présenté sa roadmap pour les cinq prochaines années.", False),
    ("feedback", "Le ministre attend un feedback rapide des élus locaux.", False),
    ("mindset", "Les entraîneurs parlent volontiers du mindset des joueurs.", False),
    ("brainstorming", "Un brainstorming a réuni les cadres pendant toute la journée.", False),
    ("streamer", "Le jeune streamer a réuni des milliers de spectateurs.", False),
]

DAY2_SPECIAL = [
    # planted positives
    ("dégooglisation", "Le collectif défend une « dégooglisation » des services numériques de l'école.", True),
    ("dégooglisation", "Les enseignants jugent la dégooglisation nécessaire pour protéger les élèves.", True),
    ("infobésité", "Les lecteurs se plaignent d'une infobésité qui rend difficile le tri des nouvelles.", True),
    # planted typo
    ("candiudature", "Le maire a annoncé sa candiudature aux prochaines élections municipales.", False),
    # negatives: proper nouns
    ("Lanvaux", "Le sénateur Lanvaux a critiqué le projet du gouvernement.", False),
    ("Keraudren", "Selon Soizic Keraudren, chercheuse à l'université, la tendance se confirme.", False),
    ("Soizic", None, False),
    ("Montbrisac", "Les habitants de Montbrisac réclament une nouvelle école.", False),
    ("Zerbinati", "L'entraîneur Zerbinati a prolongé son contrat avec le club.", False),
    # negatives: English
    ("coworking", "Un espace de coworking a ouvert dans l'ancienne gare.", False),
    ("newsletter", "Le musée envoie une newsletter chaque semaine à ses abonnés.", False),
    ("benchmark", "Le cabinet a réalisé un benchmark des pratiques européennes.", False),
    ("storytelling", "Le candidat soigne son storytelling pendant la campagne.", False),
    # negatives: typos
    ("ministree", "Le ministree de la santé a publié un rapport.", False),
    ("électeus", "Les électeus se sont déplacés en nombre dimanche.", False),
]

# Reviewer annotations of the positives: part of speech and creation process.
ANNOTATIONS = {
    "lumbersexuel": ("ADJ", "EMP+MORSEM"),
    "normcore": ("NOM", "EMP"),
    "consommatoire": ("ADJ", "MORSEM"),
    "franco-planétaire": ("ADJ", "MORSEM"),
    "kill-billeuse": ("NOM", "EMP+MORSEM"),
    "startuppeuse": ("NOM", "EMP+MORSEM"),
    "complotisme": ("NOM", "MORSEM"),
    "surtourisme": ("NOM", "MORSEM"),
    "démondialisation": ("NOM", "MORSEM"),
    "hyperconnectivité": ("NOM", "MORSEM"),
    "dégooglisation": ("NOM", "EMP+MORSEM"),
    "infobésité": ("NOM", "MORSEM"),
}

# Primary topic of each article, per day.
ARTICLE_TOPICS = {
    1: ["economie", "politique", "religion", "defense", "sport", "culture",
        "sante", "economie", "politique", "culture", "sport", "religion"],
    2: ["culture", "politique", "economie", "religion", "defense", "sante",
        "sport", "politique", "culture", "economie", "religion", "defense"],
}

ARTIFACT = "retinalazy"
PARAGRAPHS = 9
SENTENCES_PER_PARAGRAPH = 5

TOKEN = re.compile(r"\w+(?:[-'’]\w+)*")
ELISIONS = ("jusqu", "lorsqu", "puisqu", "quoiqu", "presqu", "qu", "l", "d", "j", "m", "n", "s", "t", "c")


def load_lexicon():
    with open(LEXICON, encoding="utf-8") as fh:
        return {unicodedata.normalize("NFC", line.strip()) for line in fh if line.strip()}


def known(lexicon, token):
    form = unicodedata.normalize("NFC", token).replace("’", "'")
    for cand in (form, form.lower()):
        if cand in lexicon:
            return True
    low = form.lower()
    for clitic in ELISIONS:
        if low.startswith(clitic + "'") and len(low) > len(clitic) + 1:
            return low[len(clitic) + 1:] in lexicon
    return False


def check_sentences(lexicon, sentences, allowed):
    bad = set()
    for s in sentences:
        for tok in TOKEN.findall(s):
            if tok.isdigit() or len(tok) < 2:
                continue
            if any(tok.lower().endswith(a.lower()) for a in allowed) or known(lexicon, tok):
                continue
            bad.add(tok)
    return bad


def html_page(title, paragraphs, journal, artifact):
    body = "\n".join(f"      <p>{escape(p)}</p>" for p in paragraphs)
    lazy = ""
    if artifact:
        lazy = (
            f'      <img class="{ARTIFACT}" data-{ARTIFACT}="photo.jpg" alt="{ARTIFACT}">\n'
            f"      <script>window.{ARTIFACT} = {{ enabled: true }};</script>\n"
            f"      <noscript>{ARTIFACT}</noscript>\n"
        )
    return f"""<!DOCTYPE html>
<html lang="fr">
<head>
  <meta charset="utf-8">
  <title>{escape(title)}</title>
  <style>.{ARTIFACT} {{ display: block; }}</style>
</head>
<body>
  <nav><a href="/">Accueil</a> <a href="/politique">Politique</a> <a href="/sport">Sport</a></nav>
  <header><h1>{escape(journal)}</h1></header>
  <main>
    <article>
      <h2>{escape(title)}</h2>
{lazy}{body}
    </article>
  </main>
  <aside><p>Lire aussi</p></aside>
  <footer><p>Tous droits réservés</p></footer>
</body>
</html>
"""


def rss(journal, items):
    entries = "\n".join(
        f"""    <item>
      <title>{escape(t)}</title>
      <link>{escape(link)}</link>
      <pubDate>{pub}</pubDate>
      <author>{escape(author)}</author>
    </item>"""
        for t, link, pub, author in items
    )
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<rss version="2.0">
  <channel>
    <title>{escape(journal)}</title>
    <link>https://example.org/{escape(journal)}</link>
    <description>Fil d'actualité</description>
{entries}
  </channel>
</rss>
"""


def secondary(topic):
    order = list(POOL)
    return order[(order.index(topic) + 3) % len(order)]


def build_day(day, date, specials, placements, out, manifest):
    rng = random.Random(1000 + day)
    topics = ARTICLE_TOPICS[day]
    articles = []
    for idx, topic in enumerate(topics):
        pool = POOL[topic]
        extra = POOL[secondary(topic)]
        order = rng.sample(pool, len(pool))
        paragraphs = []
        cursor = 0
        for _ in range(PARAGRAPHS):
            sentences = []
            for k in range(SENTENCES_PER_PARAGRAPH):
                if k == SENTENCES_PER_PARAGRAPH - 1 and rng.random() < 0.4:
                    sentences.append(rng.choice(extra))
                else:
                    sentences.append(order[cursor % len(order)])
                    cursor += 1
            paragraphs.append(sentences)
        articles.append({"topic": topic, "paragraphs": paragraphs})

    with_sentence = [x for x in specials if x[1]]
    if len(with_sentence) != len(placements):
        raise SystemExit(f"day {day}: {len(with_sentence)} planted sentences, {len(placements)} slots")
    planted = []
    for (form, sentence, positive), (a, p, s) in zip([x for x in specials if x[1]], placements):
        articles[a]["paragraphs"][p].insert(s, sentence)
        planted.append({"form": form, "article": a, "paragraph": p, "positive": positive})

    day_dir = out / f"day{day}"
    (day_dir / "articles").mkdir(parents=True, exist_ok=True)
    items = {slug: [] for _, slug in JOURNALS}
    pub = datetime(*map(int, date.split("-")), 6, 0, tzinfo=timezone.utc)
    files = []
    for idx, art in enumerate(articles):
        journal, slug = JOURNALS[idx % len(JOURNALS)]
        name = f"{slug}-{idx + 1:02d}.html"
        title = f"{art['topic'].capitalize()} : les nouvelles du jour"
        texts = [" ".join(p) for p in art["paragraphs"]]
        artifact = day == 2 and idx in (0, 5)
        (day_dir / "articles" / name).write_text(html_page(title, texts, journal, artifact), encoding="utf-8")
        items[slug].append((title, f"articles/{name}", format_datetime(pub), f"Rédaction {journal}"))
        files.append({"file": f"day{day}/articles/{name}", "journal": journal, "topic": art["topic"],
                      "paragraphs": len(texts), "artifact": artifact})
        art["texts"] = texts
    feeds_tsv = ["journal_name\tfeed_url\tfetch_enabled"]
    for journal, slug in JOURNALS:
        (day_dir / f"{slug}.xml").write_text(rss(journal, items[slug]), encoding="utf-8")
        feeds_tsv.append(f"{journal}\tfile:day{day}/{slug}.xml\t1")
    (out / f"feeds-day{day}.tsv").write_text("\n".join(feeds_tsv) + "\n", encoding="utf-8")

    for entry in planted:
        entry["file"] = files[entry["article"]]["file"]
        entry["paragraph_count"] = files[entry["article"]]["paragraphs"]
        text = articles[entry["article"]]["texts"][entry["paragraph"]]
        i = text.find(entry["form"])
        entry["quoted"] = text[max(0, i - 2):i].endswith("« ")
    manifest[f"day{day}"] = {"date": date, "articles": files, "planted": planted}
    return [t for art in articles for t in art["texts"]]


def decisions(specials):
    rows = []
    seen = set()
    for form, _, positive in specials:
        if form in seen:
            continue
        seen.add(form)
        pos, proc = ANNOTATIONS[form] if positive else ("", "")
        rows.append({"word": form, "valid": int(positive), "pos": pos, "proc": proc})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=HERE / "minicorpus")
    ap.add_argument("--check-only", action="store_true")
    args = ap.parse_args()

    lexicon = load_lexicon()
    allowed = {f for f, _, _ in DAY1_SPECIAL + DAY2_SPECIAL}
    all_sentences = [s for pool in POOL.values() for s in pool]
    all_sentences += [s for _, s, _ in DAY1_SPECIAL + DAY2_SPECIAL if s]
    bad = check_sentences(lexicon, all_sentences, allowed)
    leaked = sorted(f for f in allowed if known(lexicon, f))
    if bad or leaked:
        print("unknown pool words:", " ".join(sorted(bad)), file=sys.stderr)
        print("planted forms already known:", " ".join(leaked), file=sys.stderr)
        return 1
    if args.check_only:
        return 0

    out = args.out
    manifest = {"artifact": ARTIFACT, "journals": [j for j, _ in JOURNALS]}
    # (article, paragraph, sentence slot)
    day1_slots = [(0, 2, 1), (5, 3, 2), (0, 4, 0), (2, 1, 3), (1, 5, 1), (7, 0, 2), (9, 2, 1),
                  (4, 6, 0), (11, 3, 2), (6, 4, 1), (3, 2, 2), (8, 5, 1), (1, 1, 0), (7, 3, 3),
                  (9, 5, 2), (6, 2, 0), (2, 4, 1), (3, 0, 2), (10, 3, 0), (5, 5, 1), (8, 2, 3),
                  (11, 1, 1), (4, 3, 2), (10, 6, 1), (2, 5, 3), (6, 6, 0), (1, 7, 2)]
    # dégooglisation: quoted in the second paragraph of article 0, repeated
    # unquoted in its fifth; infobésité in the middle of article 4.
    day2_slots = [(0, 1, 1), (0, 4, 2), (4, 3, 2), (1, 2, 1), (2, 5, 0), (3, 1, 2), (6, 3, 1),
                  (8, 0, 2), (5, 4, 1), (9, 2, 3), (7, 6, 0), (10, 3, 2), (11, 4, 1), (3, 5, 0)]
    texts1 = build_day(1, "2026-03-02", DAY1_SPECIAL, day1_slots, out, manifest)
    texts2 = build_day(2, "2026-03-03", DAY2_SPECIAL, day2_slots, out, manifest)
    manifest["day1"]["tokens"] = sum(len(TOKEN.findall(t)) for t in texts1)
    manifest["day2"]["tokens"] = sum(len(TOKEN.findall(t)) for t in texts2)
    manifest["day1"]["decisions"] = decisions(DAY1_SPECIAL)
    manifest["day2"]["decisions"] = decisions(DAY2_SPECIAL)
    (out / "manifest.json").write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"day1 tokens {manifest['day1']['tokens']}, day2 tokens {manifest['day2']['tokens']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
