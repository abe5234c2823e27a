#!/usr/bin/env python3
# Copyright 2026 The BlinQS Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# you may obtain a copy of the License at
#
#                 http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the 20-image grayscale PGM test corpus.

The images come from the sample data bundled with two old PyPI source
releases (scipy 0.16.1 and scikit-image 0.10.1). Nothing is committed to the
repository; run this once and point the build at the output directory.

    python3 tools/fetch_corpus.py [--out data/corpus] [--cache ~/.cache/blinqs]

Needs numpy and Pillow.
"""

import argparse
import bz2
import io
import json
import pathlib
import pickle
import sys
import tarfile
import urllib.request

import numpy as np
from PIL import Image

RELEASES = {
    "scipy": "0.16.1",
    "scikit-image": "0.10.1",
}

SKIMAGE_FILES = [
    "camera.png", "moon.png", "brick.png", "grass.png", "rough-wall.png",
    "coins.png", "clock_motion.png", "chelsea.png", "coffee.png",
    "hubble_deep_field.jpg", "page.png", "text.png", "ihc.png",
    "phantom.png", "color.png", "bw_text.png", "chessboard_GRAY.png",
]


def sdist(package, version, cache):
    cache.mkdir(parents=True, exist_ok=True)
    meta_url = f"https://pypi.org/pypi/{package}/{version}/json"

    for existing in cache.glob(f"{package}-{version}.tar.gz"):
        return existing

    with urllib.request.urlopen(meta_url) as r:
        meta = json.load(r)

    url = next(u["url"] for u in meta["urls"] if u["packagetype"] == "sdist")
    target = cache / f"{package}-{version}.tar.gz"
    print(f"downloading {url}", file=sys.stderr)

    with urllib.request.urlopen(url) as r:
        target.write_bytes(r.read())

    return target


def member(tar, suffix):
    for m in tar.getmembers():
        if m.name.endswith(suffix):
            return tar.extractfile(m).read()
    raise KeyError(suffix)


def to_gray(arr):
    arr = np.asarray(arr)
    if arr.ndim == 3:
        return np.asarray(Image.fromarray(arr[..., :3].astype(np.uint8)).convert("L"))
    return np.clip(arr, 0, 255).astype(np.uint8)


def write_pgm(path, gray):
    h, w = gray.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + gray.astype(np.uint8).tobytes())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="data/corpus", type=pathlib.Path)
    ap.add_argument("--cache", default=pathlib.Path.home() / ".cache" / "blinqs", type=pathlib.Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    images = {}

    with tarfile.open(sdist("scipy", RELEASES["scipy"], args.cache)) as tar:
        images["lena"] = pickle.loads(member(tar, "misc/lena.dat"), encoding="latin1")
        images["ascent"] = pickle.loads(member(tar, "misc/ascent.dat"), encoding="latin1")
        face = np.frombuffer(bz2.decompress(member(tar, "misc/face.dat")), dtype=np.uint8)
        images["face"] = face.reshape(768, 1024, 3)

    with tarfile.open(sdist("scikit-image", RELEASES["scikit-image"], args.cache)) as tar:
        for name in SKIMAGE_FILES:
            img = Image.open(io.BytesIO(member(tar, "skimage/data/" + name)))
            if img.mode in ("1", "P", "RGBA"):
                img = img.convert("RGB")
            images[pathlib.Path(name).stem.replace("-", "_")] = np.asarray(img)

    for name, arr in sorted(images.items()):
        gray = to_gray(arr)
        write_pgm(args.out / f"{name}.pgm", gray)
        print(f"{name}: {gray.shape[1]}x{gray.shape[0]}")


if __name__ == "__main__":
    main()
