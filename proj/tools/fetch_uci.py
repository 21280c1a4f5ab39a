#!/usr/bin/env python3
"""Download the four UCI benchmark datasets into a local data directory.

Files are written in the original UCI layout (one example per line) after
whitespace normalisation: each line is stripped and lines are joined with a
single newline. Sources are tried in order:

  1. the UCI repository itself;
  2. archives on the Python package index that redistribute the same files
     (Orange 2.7.8 source tarball, keel-ds 0.2.5 wheel), verified by sha256.

Every produced file is checked for its expected row count; files derived from
the pinned mirror archives are additionally checked against pinned sha256
digests. Thyroid (ann-train/ann-test) is only available from UCI.

Usage: fetch_uci.py [--dest DIR] [--offline-cache DIR]
"""

import argparse
import hashlib
import io
import os
import sys
import tarfile
import urllib.request
import zipfile

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"
PYPI = "https://files.pythonhosted.org/packages"

ORANGE = {
    "url": PYPI + "/43/61/29c81c53504fb4c774eaec5218ca39f5d2625a61f0f6a52c61097be17f1c/Orange-2.7.8.tar.gz",
    "sha256": "9602d621d8258c90a8122b2ae2eb7471139836f0a16b6941e83735739913af5c",
    "name": "Orange-2.7.8.tar.gz",
}
KEEL = {
    "url": PYPI + "/77/88/c99136c61bb85663bd8cfb328fada55846eb10bd7271058160526e9674bf/keel_ds-0.2.5-py3-none-any.whl",
    "sha256": "79faf1bd2f3ac2082d16eb9c8c49b2b1a60a5182e94464c5d32c7c642ea9650e",
    "name": "keel_ds-0.2.5-py3-none-any.whl",
}

# name -> (UCI path, expected rows)
FILES = {
    "breast-cancer-wisconsin.data": ("breast-cancer-wisconsin/breast-cancer-wisconsin.data", 699),
    "pima-indians-diabetes.data": ("pima-indians-diabetes/pima-indians-diabetes.data", 768),
    "monks-1.train": ("monks-problems/monks-1.train", 124),
    "monks-1.test": ("monks-problems/monks-1.test", 432),
    "monks-2.train": ("monks-problems/monks-2.train", 169),
    "monks-2.test": ("monks-problems/monks-2.test", 432),
    "monks-3.train": ("monks-problems/monks-3.train", 122),
    "monks-3.test": ("monks-problems/monks-3.test", 432),
    "ann-train.data": ("thyroid-disease/ann-train.data", 3772),
    "ann-test.data": ("thyroid-disease/ann-test.data", 3428),
}

# sha256 of the normalised files produced from the pinned mirror archives.
MIRROR_DIGESTS = {
    "breast-cancer-wisconsin.data": "402c585309c399237740f635ef9919dc512cca12cbeb20de5e563a4593f22b64",
    "pima-indians-diabetes.data": "33e704cdafa8769a75728e4658dcce5bc1da1ce36174603687fe545f46e39394",
    "monks-1.train": "0f8c27086fc55c90756ced63d5d9ba77b5a25c6d669f058e6f40e04a8db9fb1b",
    "monks-1.test": "c8098df7102681d1b06aadf0ce513bd2fc3e98b512ca2203cb27f4d0422fb772",
    "monks-2.train": "d3cf7b95a6d4f9beb4de732a20b18e2c71ed382675c5ea09ae5be86c4a6bf16e",
    "monks-2.test": "3a5170ecc44f23cc953e491975e751a52e62c16539aef4dc0b693387979de40b",
    "monks-3.train": "e658eb584bf5f76b9368703500529064f6a7f5ddb3ed6f3804f6004d9008d386",
    "monks-3.test": "c8dfbf97726a309cf7d5bdc414ffc7d71bc037a283aaa1843b33da7e9fcd14f0",
}


def normalise(text):
    lines = [ln.strip() for ln in text.replace("\r", "").split("\n")]
    return "\n".join(ln for ln in lines if ln) + "\n"


def sha256(data):
    return hashlib.sha256(data).hexdigest()


def fetch(url, timeout=30):
    with urllib.request.urlopen(url, timeout=timeout) as resp:
        return resp.read()


def fetch_archive(spec, cache):
    path = os.path.join(cache, spec["name"]) if cache else None
    if path and os.path.exists(path):
        with open(path, "rb") as f:
            data = f.read()
    else:
        data = fetch(spec["url"], timeout=120)
        if path:
            os.makedirs(cache, exist_ok=True)
            with open(path, "wb") as f:
                f.write(data)
    if sha256(data) != spec["sha256"]:
        raise RuntimeError(f"checksum mismatch for {spec['name']}")
    return data


def orange_tab_rows(text):
    # Orange .tab: three header lines, then tab-separated rows.
    return [ln.split("\t") for ln in text.replace("\r", "").split("\n")[3:] if ln.strip()]


def from_orange(archive):
    out = {}
    tar = tarfile.open(fileobj=io.BytesIO(archive), mode="r:gz")

    def member(name):
        return tar.extractfile("Orange-2.7.8/Orange/datasets/" + name).read().decode()

    classes = {"benign": "2", "malignant": "4"}
    rows = orange_tab_rows(member("breast-cancer-wisconsin-disc.tab"))
    out["breast-cancer-wisconsin.data"] = "\n".join(
        ",".join(r[:10] + [classes[r[10]]]) for r in rows)

    for i in (1, 2, 3):
        for part, suffix in (("learn", "train"), ("test", "test")):
            rows = orange_tab_rows(member(f"monks-{i}_{part}.tab"))
            out[f"monks-{i}.{suffix}"] = "\n".join(" ".join(r) for r in rows)
    return out


def from_keel(archive):
    z = zipfile.ZipFile(io.BytesIO(archive))
    text = z.read("keel_ds/data/imbalanced/raw/pima.dat").decode()
    classes = {"positive": "1", "negative": "0"}
    lines = []
    for ln in text.splitlines():
        if not ln.strip():
            continue
        fields = [f.strip() for f in ln.split(",")]
        lines.append(",".join(fields[:8] + [classes[fields[8]]]))
    return {"pima-indians-diabetes.data": "\n".join(lines)}


def write(dest, name, text, source):
    body = normalise(text).encode()
    rows = body.count(b"\n")
    expected_rows = FILES[name][1]
    if rows != expected_rows:
        raise RuntimeError(f"{name}: expected {expected_rows} rows, got {rows}")
    digest = sha256(body)
    if source == "mirror" and MIRROR_DIGESTS.get(name, digest) != digest:
        raise RuntimeError(f"{name}: checksum mismatch ({digest})")
    with open(os.path.join(dest, name), "wb") as f:
        f.write(body)
    print(f"  {name:32s} {rows:5d} rows  sha256={digest[:16]}  [{source}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=os.environ.get("DBNB_DATA_DIR", "data"))
    ap.add_argument("--offline-cache", default=None,
                    help="directory holding (or receiving) the mirror archives")
    ap.add_argument("--no-uci", action="store_true", help="skip the UCI repository")
    args = ap.parse_args()
    os.makedirs(args.dest, exist_ok=True)

    missing = []
    pending = dict(FILES)
    if not args.no_uci:
        for name, (path, _) in list(pending.items()):
            try:
                write(args.dest, name, fetch(f"{UCI}/{path}").decode(), "uci")
                del pending[name]
            except Exception as exc:  # noqa: BLE001
                print(f"  {name}: UCI unavailable ({exc.__class__.__name__})")
                break

    mirrors = ((ORANGE, from_orange), (KEEL, from_keel))
    for spec, extract in mirrors:
        wanted = [n for n in pending if n in MIRROR_DIGESTS]
        if not wanted:
            break
        try:
            files = extract(fetch_archive(spec, args.offline_cache))
        except Exception as exc:  # noqa: BLE001
            print(f"  mirror {spec['name']} failed: {exc}")
            continue
        for name, text in files.items():
            if name in pending:
                write(args.dest, name, text, "mirror")
                del pending[name]

    missing = sorted(pending)
    if missing:
        print("\nNot available: " + ", ".join(missing))
        print("Download them manually from " + UCI + " (thyroid-disease/, ...)"
              " and place them in " + os.path.abspath(args.dest))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
