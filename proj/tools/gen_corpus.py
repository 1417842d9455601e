#!/usr/bin/env python3
"""Generate the synthetic email-token corpus shipped in data/.

The pipeline dedups whitespace-separated tokens, so what matters is the set
of distinct tokens. The generator controls the corpus statistics the attack
is sensitive to:

- every token has a distinct character set (duplicate charsets produce
  identical incidence columns that can never be told apart),
- sizes 1, 2, 27-46, and 49-94 hold exactly one token each ("anchors"):
  globally unique column sums, so any such token the adversary knows is an
  instant match at any target scale. These are the only places a run with
  very little knowledge can start. Anchors up to size 46 are the letter
  prefix order plus a prefix of the tail band; larger anchors lead with the
  tail band, so between them the two families measure both the letter depth
  and the tail-band content of any column they are compared against,
- sizes 10-26 hold a "rung" lattice: each token is the first j characters
  of the fixed letter order plus one contiguous window of the tail band.
  Overlap against a matched anchor reads off j or the window position, so
  one matched anchor splits a rung size class into small groups, matched
  rungs split the rest, and a single seed grows into a real foothold even
  when the attacker knows almost nothing else,
- the 48 uncommon characters are split into a 36-character fuel zone and a
  12-character ramp zone of six fixed 2-character blocks. Uncommon
  characters only ever appear as (a) one character alone on a plain base
  (igniters, and the fuel band below), (b) whole ramp blocks (ballast), or
  (c) the whole fuel zone plus whole ramp blocks (heavy ballast and anchors
  past 48). A matched column therefore never separates two fuel characters
  or two characters of one ramp block from each other; igniters are the
  only separating evidence, so uncommon-row recovery tracks igniter
  knowledge, no matter how large or small the target sample is,
- ballast (sizes 23-26) is a plain base plus one to six whole ramp blocks.
  A ballast token decodes once its blocks are fully recovered, so the
  graded block counts turn the all-rows-known requirement into a smooth
  ramp instead of a cliff as igniter knowledge grows. Heavy ballast (sizes
  47-48) adds the whole fuel zone and only decodes near full knowledge,
- a fuel band (same base word under every fuel-zone character) stays
  pairwise ambiguous until the matching character is separated; these
  columns hold the string-match rate below the ceiling at mid knowledge,
  and the 36-wide sibling groups keep enough siblings present in small
  target samples that fuel columns do not isolate just because the sample
  shrank.
"""

import collections
import pathlib
import random

SEED = 20240817

LOWER = "abcdefghijklmnopqrstuvwxyz"
DIGITS = "0123456789"
MEDIUM_PUNCT = ".,-_@:;/'+"
RARE_PUNCT = "()[]{}<>!?#$%&*=\\^`~\"|"
RARE = [c for c in LOWER.upper()] + [c for c in RARE_PUNCT]  # 48 characters
FUEL_ZONE = RARE[:36]  # uppercase plus ()[]{}<>!?
RAMP_ZONE = RARE[36:]  # the remaining 12 punctuation characters
RAMP_BLOCKS = [RAMP_ZONE[i:i + 2] for i in range(0, 12, 2)]  # six pairs

# The 46 common characters, split into a 22-letter prefix order and a
# 24-character tail band. Prefix-band membership of a token is what anchor
# overlap counts can measure, so the two bands play different roles.
PREFIX_ORDER = "etaoinsrhldcumfpgwybvk"  # 22 most frequent letters
TAIL_BAND = list("jxqz" + DIGITS + MEDIUM_PUNCT)  # remaining 24 commons

# English-ish letter weights for base words, flattened (roughly the square
# root of corpus frequencies) so that mid-tail letters show up often enough
# to make base charsets easy to tell apart by overlap counts.
LETTER_WEIGHTS = {
    "e": 36, "t": 30, "a": 29, "o": 27, "i": 26, "n": 26, "s": 25, "h": 25,
    "r": 24, "d": 21, "l": 20, "c": 17, "u": 17, "m": 16, "w": 16, "f": 15,
    "g": 14, "y": 14, "p": 14, "b": 12, "v": 10, "k": 9, "j": 4, "x": 4,
    "q": 3, "z": 3,
}

# pool composition knobs
TOTAL_TOKENS = 10000
FUEL_BASES = 20  # one variant per fuel-zone character each
IGNITERS_PER_CHAR = 10
# sparse rung sizes keep singleton overlap classes for tiny-knowledge seeds;
# the dense sizes exist to saturate the coordinate pool at full scale
RUNG_COUNTS = {s: 90 for s in range(10, 23)} | {s: 250 for s in range(23, 27)}
BALLAST_SIZES = range(23, 27)
# tokens per size carrying k whole ramp blocks; heavier low grades give the
# early part of the recovery curve most of its slope
BALLAST_GRADE_COUNTS = {1: 400, 2: 110, 3: 85, 4: 96, 5: 180, 6: 500}
HEAVY_SIZES = (47, 48)
HEAVY_GRADE_COUNTS = {2: 120, 4: 80}  # per size, k ramp blocks on top of fuel
ANCHOR_SIZES = list(range(27, 47)) + list(range(49, 95))  # one per size
CORE_SIZES = range(3, 10)


class Pool:
    def __init__(self, rng):
        self.rng = rng
        self.tokens = []
        self.seen_charsets = set()
        self.char_counts = collections.Counter()

    def add(self, text):
        while text in STOPSET:  # stop words get dropped at load time
            text = text[0] + text
        key = "".join(sorted(set(text)))
        if key in self.seen_charsets:
            return False
        self.seen_charsets.add(key)
        self.tokens.append(text)
        self.char_counts.update(key)
        return True


def weighted_letters(rng, size):
    picked = set()
    letters = list(LETTER_WEIGHTS)
    wts = list(LETTER_WEIGHTS.values())
    while len(picked) < size:
        picked.add(rng.choices(letters, weights=wts)[0])
    return picked


def base_charset(rng, lo, hi):
    """Mostly lowercase plus a couple of tail-band characters (digits,
    everyday punctuation). Tail hits vary a lot between words, which is what
    lets overlap counts against a handful of matched columns tell two words
    of the same length apart."""
    size = rng.randint(lo, hi)
    t = min(rng.choices([0, 1, 2, 3], weights=[35, 35, 20, 10])[0], size - 2)
    chars = set(rng.sample(TAIL_BAND, t)) if t else set()
    letters = list(LETTER_WEIGHTS)
    wts = list(LETTER_WEIGHTS.values())
    while len(chars) < size:
        chars.add(rng.choices(letters, weights=wts)[0])
    return chars


def realize_word(rng, charset):
    """Arrange a charset into a word-looking token."""
    letters = sorted(charset)
    rng.shuffle(letters)
    if len(letters) > 2 and rng.random() < 0.35:
        dup = rng.choice(letters)
        letters.insert(rng.randrange(len(letters)), dup)
    return "".join(letters)


def decorate(rng, word, ch):
    """Attach one extra character in email-token style."""
    if ch.isupper():
        return ch + word
    return word + ch if rng.random() < 0.5 else ch + word


def gen_singletons(pool, rng):
    """One token of charset size 1 and one of size 2: two more unique column
    sums, and the cheapest rows a fresh match can pin down."""
    pool.add("000")
    pool.add("011")


def gen_anchors(pool, rng):
    """One token per size in ANCHOR_SIZES. Anchors up to 46 are built from
    the common characters only; anchors from 49 up carry every uncommon
    character at once. Either way no anchor contains a proper subset of the
    fuel zone or of a ramp block, so matching one never separates two
    uncommon characters that something else keeps ambiguous. The common part
    is nested: small anchors are the full letter order plus a prefix of the
    tail band, large anchors lead with the tail band and then take a prefix
    of the letter order, so overlap counts against a couple of anchors read
    off both the letter depth and the tail content of another column."""
    for size in ANCHOR_SIZES:
        if size <= 46:
            charset = list(PREFIX_ORDER) + TAIL_BAND[:size - 22]
        else:
            c = size - 48
            charset = (TAIL_BAND[:min(24, c)] +
                       list(PREFIX_ORDER[:max(0, c - 24)]) + RARE)
        rng.shuffle(charset)
        if not pool.add("".join(charset)):
            raise SystemExit(f"anchor size {size} collided")


def lattice_cells(size):
    """Every (window width, window offset) pair a charset of this size can
    take: PREFIX_ORDER[:size - width] plus one contiguous TAIL_BAND window.
    Each cell is a distinct charset whose overlap against every anchor (and
    every other cell) is a fixed number, independent of which strings ended
    up in the target sample. Bands built from cells therefore isolate just
    as well in a small target as in the full corpus, which keeps recovery
    rates scale-stable."""
    cells = []
    for width in range(max(0, size - 22), min(size, 24) + 1):
        offsets = range(25 - width) if width else [0]
        for off in offsets:
            cells.append((width, off))
    return cells


def cell_charset(size, width, off):
    return set(PREFIX_ORDER[:size - width]) | set(TAIL_BAND[off:off + width])


def gen_rungs(pool, rng):
    """Sizes 10-26, one token per lattice cell used. Overlap with a matched
    small anchor reads the letter depth plus a fixed clip of the window, and
    overlap with a matched large anchor reads the window position, so the
    signatures of any two same-size rungs differ against some anchor. One
    matched anchor typically isolates a few rungs in each sparse size class
    outright, and each matched rung then splits the remaining classes
    further (rung-rung overlap compares both depths and windows), which is
    what lets a single seed grow into a foothold at tiny knowledge ratios.
    Returns the unused cells of each size for the igniters to build on."""
    spare = {}
    for size, count in RUNG_COUNTS.items():
        cells = lattice_cells(size)
        rng.shuffle(cells)
        for width, off in cells[:count]:
            charset = cell_charset(size, width, off)
            if not pool.add(realize_word(rng, charset)):
                raise SystemExit(f"rung {size}/{width}/{off} collided")
        spare[size] = cells[count:]
    return spare


def gen_ballast(pool, rng):
    """A plain base plus one to six whole ramp blocks. A matched ballast
    column tells ramp blocks apart but never looks inside one, so the only
    way to finish recovering its rows is igniter knowledge; a token with k
    blocks decodes once its k blocks are fully lit, so the graded counts in
    BALLAST_GRADE_COUNTS shape how recovery ramps up with knowledge. Block
    alignment also means a matched ballast column never separates fuel-zone
    siblings, which keeps small target samples from leaking anything the
    full corpus would not."""
    for size in BALLAST_SIZES:
        for k, count in BALLAST_GRADE_COUNTS.items():
            made = 0
            while made < count:
                base = base_charset(rng, size - 2 * k, size - 2 * k)
                word = realize_word(rng, base)
                tail = [c for b in rng.sample(RAMP_BLOCKS, k) for c in b]
                rng.shuffle(tail)
                if pool.add(word + "".join(tail)):
                    made += 1


def gen_heavy(pool, rng):
    """Sizes 47-48: a short lattice-cell base plus the whole fuel zone and
    two or four whole ramp blocks. Same harmless-when-matched property as
    ballast, but these decode only when nearly every uncommon row is known,
    so they hold the initial-path rate away from its ceiling until
    knowledge is high."""
    for size in HEAVY_SIZES:
        for k, count in HEAVY_GRADE_COUNTS.items():
            base_size = size - 36 - 2 * k
            cells = lattice_cells(base_size)
            rng.shuffle(cells)
            made = 0
            for width, off in cells:
                if made == count:
                    break
                word = realize_word(rng, cell_charset(base_size, width, off))
                tail = FUEL_ZONE + [c for b in rng.sample(RAMP_BLOCKS, k)
                                    for c in b]
                rng.shuffle(tail)
                made += pool.add(word + "".join(tail))
            if made < count:
                raise SystemExit(f"heavy {size}/{k} ran out of cells")


def gen_fuel(pool, rng):
    """Same base word under every fuel-zone character. Any two sampled
    variants are indistinguishable until one of their characters is lit by
    an igniter, so these columns and the fuel rows resist recovery in
    proportion to the attacker's knowledge. Spanning all 36 characters
    keeps enough siblings in even a small target sample that a variant
    cannot isolate just because its group got sampled away."""
    for g in range(FUEL_BASES):
        while True:
            base = base_charset(rng, 3, 8)
            word = realize_word(rng, base)
            added = 0
            for ch in FUEL_ZONE:
                if pool.add(decorate(rng, word, ch)):
                    added += 1
            if added >= len(FUEL_ZONE) - 1:
                break
            # base collided with an existing group: try a fresh one


def gen_igniters(pool, rng, spare):
    """One uncommon character alone on a lattice-cell base: the only tokens
    that can separate that character from its fuel siblings or its ramp
    block mate. The cell base gives every igniter a deterministic overlap
    signature (any matched all-rare anchor tells it apart from the same
    cell's rung), so whether a known igniter matches does not depend on the
    target sample size."""
    sizes = [s for s in sorted(spare) if s <= 22]
    turn = 0
    for ch in RARE:
        for _ in range(IGNITERS_PER_CHAR):
            while not spare[sizes[turn % len(sizes)]]:
                turn += 1
            size = sizes[turn % len(sizes)]
            turn += 1
            width, off = spare[size].pop()
            word = realize_word(rng, cell_charset(size, width, off))
            if not pool.add(decorate(rng, word, ch)):
                raise SystemExit(f"igniter {size}/{width}/{off} collided")


def gen_core(pool, rng):
    """Short lattice-cell words fill the pool to TOTAL_TOKENS."""
    cells = [(s, w, o) for s in CORE_SIZES for w, o in lattice_cells(s)]
    rng.shuffle(cells)
    for size, width, off in cells:
        if len(pool.tokens) == TOTAL_TOKENS:
            return
        pool.add(realize_word(rng, cell_charset(size, width, off)))
    raise SystemExit("core ran out of lattice cells")


STOPWORDS = """the to of and a in for is on that by this with you it not or
be are from at as your all have new more an was we will home can us about if
page my has search free but our one other do no information time they site he
up may what which their news out use any there see only so his when contact
here business who web also now help get pm view online first am been would how
were me services some these its like service than find price date back top
people had list name just over state year day into email two health world re
next used go work last most products music buy data make them should product
system post her city add policy number such please available copyright support
message after best software then good video well where info rights public
books high school through each links she review years order very privacy book
items company read group need many user said does set under general research
university january mail full map reviews program life know games way days
management part could great united hotel real item international center ebay
must store travel comments made development report off member details line
terms before hotels did send right type because local those using results
office education national car design take posted internet address community
within states area want phone shipping reserved subject between forum family
long based code show even black check special prices website index being women
much sign file link open today technology south case project same pages uk
version section own found sports house related security both county american
photo game members power while care network down computer systems three total
place end following download him without per access think north resources
current posts big media law control water history pictures size art personal
since including guide shop directory board location change white text small
rating rate government children during usa return students shopping account
times sites level digital profile previous form events love old john main call
hours image department title description non insurance another why shall
property class cd still money quality every listing content country private
little visit save tools low reply customer december compare movies include
college value article york man card jobs provide food source author different
press learn sale around print course job canada process room stock
training too credit point join science men categories advanced west sales look
english left team estate box conditions select windows photos thread week
category note live large gallery table register however june october november
market library really action start series model features air industry plan
human provided tv yes required second hot accessories cost movie forums march
la september better say questions july yahoo going medical test friend come
dev server pc study application cart staff articles san feedback again play
looking issues april never users complete street topic comment financial
things working against standard tax person below mobile less got blog party
payment equipment login student let programs offers legal above recent park
stores side act problem red give memory performance social august quote
language story sell options experience rates create key body young america
important field few east paper single age activities club example girls
additional password latest something road gift question changes night ca hard
texas oct pay four status browse issue range building seller court
february always result audio light write war nov offer blue groups al easy
given files event release analysis request fax china making picture needs
possible might professional yet month major star areas future space committee
hand sun cards problems london washington meeting rss become interest id child
keep enter california share similar garden schools million added
reference companies listed baby learning energy run delivery net popular term
film stories put computers journal reports co try welcome central images
president notice god original head radio until cell color self council away
includes track australia discussion archive once others entertainment
agreement format least society months log safety friends sure faq trade
edition cars messages marketing tell further updated association able having
provides david fun already green studies close common drive specific several
gold feb living sep collection called short arts lot ask display limited
powered solutions means director daily beach past natural whether due et
electronics five upon period planning database says official weather mar land
average done technical window france pro region island record direct
microsoft conference environment records st district calendar costs style url
front statement update parts aug ever downloads early miles sound resource
present applications either ago document word works material bill apr written
talk federal hosting rules final adult tickets thing centre requirements via
cheap kids finance true minutes else mark third rock gifts europe
reading topics bad individual tips plus auto cover usually edit together
videos percent fast function fact unit getting global tech meet far economic
en player projects lyrics often subscribe submit germany amount watch
included feel though bank risk thanks everything deals various words linux
jul production commercial james weight town heart advertising received choose
treatment newsletter archives points knowledge magazine error camera jun girl
currently construction toys registered clear golf receive domain methods
chapter makes protection policies loan wide beauty manager india position
taken sort listings models michael known half cases step engineering florida
simple quick none wireless license paul friday lake whole annual published
later basic sony shows corporate church method purchase customers active
response practice hardware figure materials fire holiday chat enough designed
along among death writing speed html countries loss face brand discount
higher effects created remember standards oil bit yellow political increase
advertise kingdom base near environmental thought stuff french storage japan
doing loans shoes entry stay nature orders availability africa summary turn
mean growth notes agency king monday european activity copy although drug
pics western income force cash employment overall bay river commission ad
package contents seen players engine port album regional stop supplies
started administration bar institute views plans double dog build screen exchange
types soon sponsored lines electronic continue across benefits needed season
apply someone held ny anything printer condition effective believe
organization effect asked eur mind sunday selection pdf lost tour
menu volume cross anyone mortgage hope silver corporation wish inside
solution mature role rather weeks addition came supply nothing certain usr
executive running lower necessary union jewelry according dc clothing mon com
particular fine names robert homepage hour gas skills six bush islands
advice career military rental decision leave british huge sat woman
facilities zip bid kind sellers middle move cable opportunities taking values
division coming tuesday object appropriate machine logo length
actually nice score statistics client ok returns capital follow sample
investment sent shown saturday christmas england culture band flash ms lead
george choice went starting registration fri thursday courses consumer hi
airport foreign artist outside furniture levels channel letter mode phones
ideas wednesday structure fund summer allow degree contract button releases
wed homes super male matter custom virginia almost took located multiple asian
distribution editor inn industrial cause potential song cnet ltd los focus
late fall featured idea rooms female responsible inc communications win
associated thomas primary cancer numbers reason tool browser spring foundation
answer voice eg friendly schedule documents communication purpose feature bed
comes police everyone independent approach cameras brown physical operating
hill maps medicine deal hold ratings chicago forms glass happy tue smith
wanted developed thank safe unique survey prior telephone sport ready feed
animal sources mexico population pa regular secure navigation operations
therefore simply evidence station christian round paypal favorite
understand option master valley recently probably thu rentals sea built
publications blood cut worldwide improve connection partners becomes shop
manufacturers searches junior suite vegas square chris attention advance skip
diet army auction gear lee os difference allowed correct charles nation
selling lots piece sheet firm seven older illinois regulations elements
species jump cells module resort facility random pricing dvd certificate
minister motion looks fashion directions visitors documentation monitor
trading forest calls whose coverage couple giving chance vision ball ending
clients actions listen discuss accept automotive goods highly
manufacturer alabama directly instructions kong
""".split()

STOPSET = set(STOPWORDS)


def write_emails(path, tokens, rng):
    words = list(tokens)
    rng.shuffle(words)
    lines = []
    line = []
    target = rng.randint(4, 9)
    for w in words:
        if rng.random() < 0.35:
            line.append(rng.choice(STOPWORDS))
        line.append(w)
        if len(line) >= target:
            lines.append(" ".join(line))
            line = []
            target = rng.randint(4, 9)
    if line:
        lines.append(" ".join(line))
    path.write_text("\n".join(lines) + "\n")


def main():
    rng = random.Random(SEED)
    pool = Pool(rng)

    gen_singletons(pool, rng)
    gen_anchors(pool, rng)
    gen_rungs(pool, rng)
    gen_ballast(pool, rng)
    gen_heavy(pool, rng)
    gen_fuel(pool, rng)
    gen_igniters(pool, rng)
    gen_core(pool, rng)

    assert not (set(pool.tokens) & STOPSET), "token collides with a stop word"
    assert len(pool.tokens) == TOTAL_TOKENS, f"pool holds {len(pool.tokens)}"
    alphabet = set().union(*[set(t) for t in pool.tokens])
    assert len(alphabet) == 94, f"alphabet covers {len(alphabet)} != 94"

    sizes = collections.Counter(len(set(t)) for t in pool.tokens)
    for size in [1, 2] + list(ANCHOR_SIZES):
        assert sizes[size] == 1, f"unique size {size} has {sizes[size]} tokens"
    for size in RUNG_SIZES:
        floor = 80 if size not in BALLAST_SIZES else 1000
        assert sizes[size] >= floor, f"size {size} has only {sizes[size]}"
    for size in HEAVY_SIZES:
        assert sizes[size] >= 250, f"heavy size {size} has {sizes[size]}"
    for size in range(3, 10):
        assert sizes[size] >= 80, f"core size {size} has only {sizes[size]}"

    print(f"tokens: {len(pool.tokens)}")
    print(f"size histogram: {sorted(sizes.items())}")
    rare_counts = sorted(pool.char_counts[c] for c in RARE)
    print(f"rare char pool occurrences: min {rare_counts[0]} "
          f"median {rare_counts[len(rare_counts) // 2]} max {rare_counts[-1]}")

    data = pathlib.Path(__file__).resolve().parent.parent / "data"
    data.mkdir(exist_ok=True)
    write_emails(data / "emails.txt", pool.tokens, rng)
    (data / "stopwords_english.txt").write_text("\n".join(STOPWORDS) + "\n")
    print(f"wrote {data / 'emails.txt'} and stop words")


if __name__ == "__main__":
    main()


