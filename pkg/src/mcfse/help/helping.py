# -*- encoding: utf-8 -*-
"""
mcfse.help.helping module

Serialization and file writing utilities

"""
import os
import json
import tempfile

import msgpack
import cbor2 as cbor


def writeAtomic(path, data):
    """
    Write data to file at path atomically. Writes a temporary sibling file,
    fsyncs it, then renames it over path so readers never see a partial file.

    Parameters:
        path (str): destination file path. Directory must exist.
        data (bytes | str): content, str is utf-8 encoded
    """
    if hasattr(data, "encode"):
        data = data.encode("utf-8")
    head, tail = os.path.split(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=f".{tail}.", suffix=".tmp", dir=head)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def dump(data, path):
    """
    Serialize data dict and write atomically to file given by path where
    serialization is given by path's extension of either JSON, MsgPack, or CBOR
    for extension .json, .mgpk, or .cbor respectively
    """
    root, ext = os.path.splitext(path)
    if ext == '.json':
        raw = json.dumps(data, indent=2).encode("utf-8")
    elif ext == '.mgpk':
        raw = msgpack.packb(data)
    elif ext == '.cbor':
        raw = cbor.dumps(data)
    else:
        raise IOError(f"Invalid file path ext '{path}' "
                      f"not '.json', '.mgpk', or '.cbor'.")
    writeAtomic(path, raw)


def load(path):
    """
    Return data read from file path as dict
    file may be either json, msgpack, or cbor given by extension .json, .mgpk, or
    .cbor respectively
    Otherwise raise IOError
    """
    root, ext = os.path.splitext(path)
    if ext == '.json':
        with open(path, "rb") as f:
            it = json.load(f)
    elif ext == '.mgpk':
        with open(path, "rb") as f:
            it = msgpack.load(f)
    elif ext == '.cbor':
        with open(path, "rb") as f:
            it = cbor.load(f)
    else:
        raise IOError(f"Invalid file path ext '{path}' "
                      f"not '.json', '.mgpk', or '.cbor'.")

    return it
