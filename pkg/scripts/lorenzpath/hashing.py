#!/usr/bin/env python3
"""
Hashing

Purpose: fingerprint graph files and graphs so reports say exactly what was searched

Notes:
    - graph_digest hashes the canonical JSON text, so two files that differ only
      in whitespace, key order or meta block share a digest
"""

import hashlib
from pathlib import Path

from loguru import logger

from .exceptions import FileAccessError
from .model import ScenarioGraph, dump_graph

DEFAULT_CHUNK_SIZE = 8192


def calculate_file_hash(file_path: Path, chunk_size: int = DEFAULT_CHUNK_SIZE) -> str:
    """
    SHA256 of a file's bytes.

    Raises:
        FileAccessError: if the file is missing, a directory or unreadable

    Example:
        >>> len(calculate_file_hash(Path("figure1.json")))
        64
    """
    if not file_path.exists():
        raise FileAccessError(f"File not found: {file_path}")
    if file_path.is_dir():
        raise FileAccessError(f"Path is a directory: {file_path}")

    hasher = hashlib.sha256()
    try:
        with file_path.open("rb") as file:
            while chunk := file.read(chunk_size):
                hasher.update(chunk)
    except OSError as e:
        logger.error("Failed to read file {path}: {error}", path=str(file_path), error=str(e))
        raise FileAccessError(f"Error reading file {file_path}") from e

    return hasher.hexdigest()


def graph_digest(graph: ScenarioGraph) -> str:
    """SHA256 of the graph's canonical JSON (meta excluded)."""
    return hashlib.sha256(dump_graph(graph).encode("utf-8")).hexdigest()
