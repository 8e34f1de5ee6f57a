"""Freeze VADER reference outputs for the golden sentence corpus.

Needs the ``vaderSentiment==3.3.2`` distribution (``pip install .[oracle]``).
The reference rounds its outputs (3 and 4 decimals); rounding is disabled
here so the fixture carries full precision.

    python scripts/make_golden_fixture.py tests/fixtures/vader_golden.json
"""
import json
import sys

import vaderSentiment.vaderSentiment as reference

SENTENCES = [
    # canonical demo sentences shipped with the reference
    "VADER is smart, handsome, and funny.",
    "VADER is smart, handsome, and funny!",
    "VADER is very smart, handsome, and funny.",
    "VADER is VERY SMART, handsome, and FUNNY.",
    "VADER is VERY SMART, handsome, and FUNNY!!!",
    "VADER is VERY SMART, uber handsome, and FRIGGIN FUNNY!!!",
    "VADER is not smart, handsome, nor funny.",
    "The book was good.",
    "At least it isn't a horrible book.",
    "The book was only kind of good.",
    "The plot was good, but the characters are uncompelling and the dialog is not great.",
    "Today SUX!",
    "Today only kinda sux! But I'll get by, lol",
    "Make sure you :) or :D today!",
    "Catch utf-8 emoji such as 💘 and 💋 and 😁",
    "Not bad at all",
    "Sentiment analysis has never been good.",
    "Sentiment analysis has never been this good!",
    "Most automated sentiment analysis tools are shit.",
    "With VADER, sentiment analysis is the shit!",
    "Other sentiment analysis tools can be quite bad.",
    "On the other hand, VADER is quite bad ass",
    "VADER is such a badass!",
    "Without a doubt, excellent idea.",
    "Roger Dodger is one of the most compelling variations on this theme.",
    "Roger Dodger is at least compelling as a variation on the theme.",
    "Roger Dodger is one of the least compelling variations on this theme.",
    "Not such a badass after all.",
    "Without a doubt, an excellent idea.",
    "It was one of the worst movies I've seen, despite good reviews.",
    "Unbelievably bad acting!!",
    "Poor direction.",
    "VERY poor production.",
    "The movie was bad.",
    "Very bad movie.",
    "VERY BAD movie!",
    # tweet texts, raw and cleaned
    "Same folks said daikon paste could treat a cytokine storm #PfizerBioNTech",
    "Same folks said daikon paste could treat a cytokine storm PfizerBioNTech",
    "While the world has been on the wrong side of history this year, hopefully, the biggest vaccination effort we've ev…",
    "While the world has been on the wrong side of history this year hopefully the biggest vaccination effort weveev",
    "#coronavirus #SputnikV #AstraZeneca #PfizerBioNTech #Moderna #Covid_19 Russian vaccine is created to last 2-4 years…",
    "Facts are immutable, Senator, even when you're not ethically sturdy enough to acknowledge them. (1) You were born i…",
    "Does anyone have any useful advice/guidance for whether the COVID vaccine is safe whilst breastfeeding?…",
    "Does anyone have any useful adviceguidance for whether the COVID vaccine is safe whilst breastfeeding",
    "it is a bit sad to claim the fame for success of #vaccination on patriotic competition between USA, Canada, UK and…",
    "There have not been many bright days in 2020 but here are some of the best",
    "Covid vaccine; You getting it?\n\n #CovidVaccine #covid19 #PfizerBioNTech #Moderna",
    "Covid vaccine You getting it CovidVaccine covid19 PfizerBioNTech Moderna",
    "#CovidVaccine \n\nStates will start getting #COVID19Vaccine Monday, #US says \n#pakustv #NYC #Healthcare #GlobalGoals…",
    # negation and "no" rules
    "The vaccine is not bad.",
    "I don't feel good after the second dose.",
    "I never felt so good about a shot.",
    "This is never this good.",
    "There is no hope left.",
    "No, the side effects were not terrible.",
    "I have no love or joy for this rollout.",
    "Nobody said it would be easy, but it was worth it.",
    "Without doubt the best news this week.",
    "I wasnt scared at all",
    "It aint great but it aint awful",
    "Not happy, not sad, just tired.",
    "The jab was rarely painful.",
    "Despite the fear, I got vaccinated and I am grateful.",
    "No problem at all with my appointment",
    # boosters and dampeners
    "The clinic staff were extremely kind and incredibly helpful.",
    "I am slightly worried about the booster.",
    "It was sort of okay I guess.",
    "Kind of scary but mostly fine.",
    "The rollout has been really really slow.",
    "Barely any pain after the Moderna shot.",
    "So happy and so relieved right now",
    "My arm is a little sore but I am totally fine",
    # capitalization
    "Got my FIRST dose today and I am SO HAPPY",
    "THIS IS GREAT NEWS",
    "The line was HORRIBLE but the nurses were lovely",
    "AstraZeneca blood clot reports are SCARY",
    # punctuation emphasis
    "Finally vaccinated!",
    "Finally vaccinated!!!!!!",
    "Is the vaccine safe??",
    "Why is this taking so long????",
    "Great news?",
    "Terrible side effects!!",
    # "but" with repeated valences
    "good good but good",
    "great good but great bad good",
    "bad but bad and bad",
    "happy sad but happy sad",
    "I love it but I hate it but I love it",
    # idioms and special cases
    "This vaccine is to die for",
    "Yeah right, totally safe.",
    "The new variant is the kiss of death for reopening plans",
    "Waiting at the bus stop after my shot",
    "That vaccination center is the bomb",
    # emoticons and emoji
    "Second dose done :)",
    "Feeling rough today :(",
    "Vaccinated 💪😊",
    "My arm hurts 😭",
    # miscellaneous tweets
    "Pfizer vaccine approved in the UK, great day for science",
    "People are dying while waiting for vaccines. Shameful.",
    "Covaxin phase 3 results announced today",
    "Sputnik V shows 91.6% efficacy according to The Lancet",
    "I feel sick and feverish after the jab, hope it passes soon",
    "",
]


def main(out_path):
    reference.round = lambda x, n=None: x
    analyzer = reference.SentimentIntensityAnalyzer()
    rows = []
    for text in SENTENCES:
        s = analyzer.polarity_scores(text)
        rows.append({"text": text, "pos": s["pos"], "neg": s["neg"], "neu": s["neu"],
                     "compound": s["compound"]})
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump({"source": "vaderSentiment 3.3.2, unrounded", "cases": rows},
                  fh, ensure_ascii=False, indent=1)
    print(f"wrote {len(rows)} cases to {out_path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/vader_golden.json")
