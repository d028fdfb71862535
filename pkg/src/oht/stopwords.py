"""Bundled stopword lists.

The default list is the union of a fixed English and a fixed Dutch list.
It is deliberately frozen in source: index and query tokenization must
agree, so the list is part of the package contract, not configuration
that can drift between the two sides.
"""

from __future__ import annotations

ENGLISH_STOPWORDS: frozenset[str] = frozenset("""
a about above after again all also am an and any are as at back be because
been before being below between both but by can could did do does doing down
during each few for from further had has have having he her here hers him his
how i if in into is it its itself just me more most my myself no nor not now
of off on once only or other our ours out over own same she should so some
such than that the their theirs them then there these they this those through
to too under until up very was we were what when where which while who whom
why will with you your yours
""".split())

DUTCH_STOPWORDS: frozenset[str] = frozenset("""
aan af al alles als altijd andere ben bij daar dan dat de der deze die dit
doch doen door dus een eens en er ge geen geweest haar had heb hebben heeft
hem het hier hij hoe hun iemand iets ik in is ja je kan kon kunnen maar me
meer men met mij mijn moet na naar niet niets nog nu of om omdat onder ons
ook op over reeds te tegen toch toen tot u uit uw van veel voor want waren
was wat werd wezen wie wil worden wordt zal ze zelf zich zij zijn zo zonder
zou
""".split())

DEFAULT_STOPWORDS: frozenset[str] = ENGLISH_STOPWORDS | DUTCH_STOPWORDS
