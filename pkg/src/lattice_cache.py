"""
Lattice Cache
=============
Persists enumerated subgroup lattices as .npz files keyed by canonical
spec text, with an in-memory layer in front.

Files are written to a temporary name and moved into place with
os.replace, so a reader never sees a half-written lattice.
"""

import hashlib
import json
import logging
import os
import tempfile
from typing import Dict, Optional, Tuple

import numpy as np

from .config import CACHE_DIR, CACHE_FILE_PREFIX, CACHE_FILE_SUFFIX, CACHE_FORMAT_VERSION
from .errors import CacheFormatError
from .lattice import SubgroupLattice
from .perm.group import Group
from .perm.permutation import Permutation

logger = logging.getLogger(__name__)


class LatticeCache:
    """
    Usage:
        cache = LatticeCache()
        hit = cache.get("alt:5")
        if hit is None:
            cache.set("alt:5", group, lattice)
    """

    def __init__(self, cache_dir: str = CACHE_DIR, persistent: bool = True):
        self.cache_dir = cache_dir
        self.persistent = persistent
        self._memory: Dict[str, Tuple[Group, SubgroupLattice]] = {}

    def path_for(self, spec_text: str) -> str:
        digest = hashlib.sha256(spec_text.encode()).hexdigest()[:24]
        return os.path.join(self.cache_dir, f"{CACHE_FILE_PREFIX}{digest}{CACHE_FILE_SUFFIX}")

    def get(self, spec_text: str) -> Optional[Tuple[Group, SubgroupLattice]]:
        """Cached (group, lattice) for a canonical spec, or None."""
        if spec_text in self._memory:
            return self._memory[spec_text]
        if not self.persistent:
            return None
        path = self.path_for(spec_text)
        if not os.path.exists(path):
            return None
        try:
            hit = self._load(path, spec_text)
        except CacheFormatError as e:
            logger.warning("ignoring cache file %s: %s", path, e)
            return None
        self._memory[spec_text] = hit
        logger.debug("cache hit for %s", spec_text)
        return hit

    def set(self, spec_text: str, group: Group, lattice: SubgroupLattice) -> None:
        self._memory[spec_text] = (group, lattice)
        if not self.persistent:
            return
        os.makedirs(self.cache_dir, exist_ok=True)
        arrays = lattice.to_arrays()
        meta = {
            "version": CACHE_FORMAT_VERSION,
            "spec": spec_text,
            "degree": group.degree,
            "order": group.order,
            "generators": [list(g.images) for g in group.generators],
        }
        arrays["meta"] = np.array(json.dumps(meta))
        arrays["elements"] = group.elements
        fd, tmp_path = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as handle:
                np.savez_compressed(handle, **arrays)
            os.replace(tmp_path, self.path_for(spec_text))
        except BaseException:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise
        logger.debug("cached lattice for %s", spec_text)

    def clear(self) -> int:
        """Drop the memory layer and delete cache files; returns files removed."""
        self._memory.clear()
        removed = 0
        for name in self._files():
            os.remove(os.path.join(self.cache_dir, name))
            removed += 1
        return removed

    def info(self) -> Dict[str, object]:
        files = self._files()
        size = sum(os.path.getsize(os.path.join(self.cache_dir, f)) for f in files)
        return {
            "cache_dir": self.cache_dir,
            "format_version": CACHE_FORMAT_VERSION,
            "files": len(files),
            "bytes": size,
        }

    # ------------------------------------------------------------------

    def _files(self):
        if not os.path.isdir(self.cache_dir):
            return []
        return sorted(f for f in os.listdir(self.cache_dir)
                      if f.startswith(CACHE_FILE_PREFIX) and f.endswith(CACHE_FILE_SUFFIX))

    @staticmethod
    def _load(path: str, spec_text: str) -> Tuple[Group, SubgroupLattice]:
        try:
            with np.load(path, allow_pickle=False) as data:
                arrays = {k: data[k] for k in data.files}
        except (OSError, ValueError) as e:
            raise CacheFormatError(f"unreadable: {e}") from None
        try:
            meta = json.loads(str(arrays["meta"]))
        except (KeyError, ValueError):
            raise CacheFormatError("missing metadata header") from None
        if meta.get("version") != CACHE_FORMAT_VERSION:
            raise CacheFormatError(f"format version {meta.get('version')}, expected {CACHE_FORMAT_VERSION}")
        if meta.get("spec") != spec_text:
            raise CacheFormatError("spec mismatch")
        elements = arrays["elements"]
        if elements.shape != (meta["order"], meta["degree"]):
            raise CacheFormatError("element table does not match header")
        generators = [Permutation(tuple(images)) for images in meta["generators"]]
        group = Group(meta["degree"], elements, generators)
        return group, SubgroupLattice.from_arrays(group, arrays)
