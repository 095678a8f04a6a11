"""Bundled example set systems."""

from __future__ import annotations

import string

import networkx as nx

from setmerge.sets import SetSystem

_MOVIES = {
    "a": ("Garriage: A Documentary in 4 Chapters and an Epilogue (2004)",
          "Caps, Bonowicz, Fox, Kessler, Kostenbaudor, Kozlow"),
    "b": ("Last Days of Ki, The (2005)",
          "Herbst, Stilwell, Trad-DeStefano, Ashkin, Bonowicz, Chai, Chernyak, Dixon, "
          "Harpole, Lindo, Peters, Sawyer, Suppa"),
    "c": ("Interview for a Night Job (2004)", "Dastoli, James, Vergara, Edwin"),
    # the two "Moore" credits are different people
    "d": ("Pressing the Public Opinion (2004)",
          "DeVries, Yeager, Bonowicz, Chernyak, Coolman, Lindo, Moore (I), Nelson"),
    "e": ("Baseball and Glory (2006)",
          "Caffrey, Dienstag, Seabright, Shults, Chernyak, Coolman, Dastoli, Denniberg, "
          "Garcia, Grant, Leery, Myers, Reiber, Sawyer, Shields, Tompkins, Weinstein"),
    "f": ("Signs and Voices (2004)", "Hecht, Moore (II), Shepherd, Bonowicz, Dean"),
    "g": ("Banana Shell, The (2005)",
          "Baksh, Ashkin, Coolman, Fernandez, Grant, Gunn, Sawyer, Zawacki, Niki"),
}


def movie_example() -> SetSystem:
    """Seven movies of one director; elements are actors."""
    return SetSystem({k: frozenset(x.strip() for x in actors.split(","))
                      for k, (_, actors) in _MOVIES.items()})


def movie_titles() -> dict[str, str]:
    return {k: title for k, (title, _) in _MOVIES.items()}


def southern_women() -> SetSystem:
    """Davis' Southern Women: events E1..E14 as sets a..n of attending women."""
    g = nx.davis_southern_women_graph()
    events = g.graph["bottom"]
    return SetSystem({string.ascii_lowercase[i]: frozenset(g[e]) for i, e in enumerate(events)})


def southern_women_titles() -> dict[str, str]:
    events = nx.davis_southern_women_graph().graph["bottom"]
    return {string.ascii_lowercase[i]: e for i, e in enumerate(events)}


BUILTIN = {
    "movies": (movie_example, movie_titles),
    "southern-women": (southern_women, southern_women_titles),
}
