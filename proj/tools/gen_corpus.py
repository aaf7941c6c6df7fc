#!/usr/bin/env python3
"""Regenerates the committed desk corpora under tests/corpus.

Two corpus families come out of this script:

  packed   scripts hiding a payload behind the escape-family packers the
           obfuscation heuristics target: hex escape walls, %uXXXX runs,
           base64 droppers, and percent-encoded markup writers.
  replays  unrolled flood payloads as an instrumented sandbox would replay
           them, two token-identical variants per behavior class, with
           .label sidecars. The signature-generation checks cluster these.

Output is deterministic for a given seed so the corpus can be regenerated
byte for byte and audited in review.
"""

import argparse
import base64
import pathlib
import random

STYLES = ("hex", "uni", "b64", "pct")

ADJECTIVES = ["stage", "blob", "chunk", "seed", "frame", "shard", "spool", "wad"]
VERBS = ["hydrate", "unfold", "expand", "revive", "unwrap", "restore"]


def js_snippet(rng: random.Random) -> str:
    """A small plaintext script to hide inside a packer."""
    parts = []
    for k in range(rng.randrange(3, 6)):
        parts.append("var t%d = %d;" % (k, rng.randrange(3, 997)))
    salt = "".join(rng.choice("0123456789abcdef") for _ in range(48))
    parts.append('var mark = "%s";' % salt)
    parts.append("while (t0-- > 0) { t1 += t0 * %d; }" % rng.randrange(2, 9))
    parts.append("document.title = mark.slice(0, 8);")
    return " ".join(parts)


def html_snippet(rng: random.Random) -> str:
    n = rng.randrange(10, 90)
    return (
        '<div class="promo-%d" style="position:absolute;left:-%dpx">'
        '<script src="http://cdn%d.example/drop.js"></script>'
        "<img src=\"http://cdn%d.example/px.gif\"></div>" % (n, n * 7, n, n)
    )


def pad_to(rng: random.Random, text: str, minimum: int) -> str:
    while len(text) < minimum:
        text += " var p%d = %d;" % (rng.randrange(100), rng.randrange(10000))
    return text


def packed_hex(rng: random.Random) -> str:
    plain = pad_to(rng, js_snippet(rng), 70)
    wall = "".join("\\x%02x" % ord(c) for c in plain)
    name = rng.choice(ADJECTIVES)
    return (
        "// loader build %d\n"
        'var %s = "%s";\n'
        "eval(%s);\n" % (rng.randrange(1000, 9999), name, wall, name)
    )


def packed_unicode(rng: random.Random) -> str:
    plain = pad_to(rng, js_snippet(rng), 50)
    runs = "".join("%%u%04x" % ord(c) for c in plain)
    name = rng.choice(ADJECTIVES)
    verb = rng.choice(VERBS)
    return (
        "var %s = \"%s\";\n"
        "function %s(s) { return unescape(s); }\n"
        "eval(%s(%s));\n" % (name, runs, verb, verb, name)
    )


def packed_base64(rng: random.Random) -> str:
    plain = pad_to(rng, js_snippet(rng), 420)
    blob = base64.b64encode(plain.encode()).decode()
    name = rng.choice(ADJECTIVES)
    return (
        'var %s = "%s";\n'
        "var src = atob(%s);\n"
        "(new Function(src))();\n" % (name, blob, name)
    )


def packed_percent(rng: random.Random) -> str:
    markup = html_snippet(rng)
    enc = "".join("%%%02X" % ord(c) for c in markup)
    name = rng.choice(ADJECTIVES)
    return (
        'var %s = "%s";\n'
        "document.write(unescape(%s));\n" % (name, enc, name)
    )


PACKERS = {
    "hex": packed_hex,
    "uni": packed_unicode,
    "b64": packed_base64,
    "pct": packed_percent,
}

# (type, unrolled call, closing call with its three arguments)
REPLAY_CLASSES = [
    ("HashDoS", "hashFloodStep", ("collideBucket", "seedStr", "tableRef", "burstCount")),
    ("XhrObjectDoS", "spawnXhrObject", ("drainXhrPool", "requestSlot", "targetEndpoint", "allocRound")),
    ("NetworkScan", "probeNextHost", ("sweepSubnet", "subnetBase", "hostCursor", "aliveList")),
    ("PortScan", "knockPortOnce", ("walkPortRange", "portCursor", "openPorts", "probeSocket")),
    ("GeolocationLeak", "pushCoordsOut", ("drainGeoQueue", "geoWatcher", "exfilSink", "coordsBuf")),
    ("WebSocketAbuse", "blastSocketFrame", ("stormSocket", "sockHandle", "frameBlob", "floodGate")),
    ("WebWorkerDDoS", "spinWorkerUnit", ("growWorkerFarm", "workerFarm", "unitScript", "attackTick")),
]

UNROLL = 96


def replay_body(type_name: str, core: str, closing, variant: str) -> str:
    call, a1, a2, a3 = closing
    lines = [
        "// replayed %s capture, variant %s; the sandbox unrolls the flood loop"
        % (type_name.lower(), variant),
        "var run = function () {",
    ]
    lines.extend("    %s();" % core for _ in range(UNROLL))
    lines.extend([
        "};",
        "var fin = function () {",
        "    %s(%s, %s, %s);" % (call, a1, a2, a3),
        "};",
        "run();",
        "fin();",
    ])
    return "\n".join(lines) + "\n"


def write(path: pathlib.Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def gen_packed(out: pathlib.Path, seed: int, per_style: int) -> int:
    count = 0
    for style in STYLES:
        for i in range(per_style):
            rng = random.Random("%d:%s:%d" % (seed, style, i))
            write(out / ("pack_%s_%02d.js" % (style, i)), PACKERS[style](rng))
            count += 1
    return count


def gen_replays(out: pathlib.Path) -> int:
    count = 0
    for type_name, core, closing in REPLAY_CLASSES:
        for variant in "ab":
            stem = "replay_%s_%s" % (type_name.lower(), variant)
            write(out / (stem + ".js"), replay_body(type_name, core, closing, variant))
            write(out / (stem + ".js.label"), type_name + "\n")
            count += 1
    return count


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus-root", default="tests/corpus", type=pathlib.Path)
    parser.add_argument("--seed", default=20150610, type=int)
    parser.add_argument("--per-style", default=12, type=int,
                        help="packed samples per packer style")
    args = parser.parse_args()

    packed = gen_packed(args.corpus_root / "packed", args.seed, args.per_style)
    replays = gen_replays(args.corpus_root / "malicious")
    print("wrote %d packed samples, %d replay samples" % (packed, replays))


if __name__ == "__main__":
    main()
