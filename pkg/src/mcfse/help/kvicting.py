# -*- encoding: utf-8 -*-
"""
mcfse.help.kvicting module

Key-value configuration multidict

"""
from multidict import MultiDict
from ordered_set import OrderedSet as oset

from ..mcfsing import ConfigError


class Kvict(MultiDict):
    """
    Kvict is a multiple valued dictionary like class that extends MultiDict
    to hold plain-text key-value configuration. Insertion order of keys
    preserved. Repeated keys accumulate values so a config may name several
    sequences with repeated 'sequence' lines. Later values win for single
    valued lookups so command line overrides are simply added last.

    Text format:
        # comment
        key = value
        key: value

    Extended methods in Kvict but not in MultiDict are:
       nab(key [,default])  get last value at key else default or None
       naball(key [,default]) get all values in insertion order else default
       nabInt, nabFloat, nabBool, nabList, nabTriple typed last value getters
       lasts() get all items where item value is last inserted value at key
    """
    Trues = ("1", "true", "yes", "on")
    Falses = ("0", "false", "no", "off")

    def __repr__(self):
        return "{}({})".format(self.__class__.__name__, list(self.items()))


    @classmethod
    def fromText(cls, text):
        """
        Returns Kvict parsed from key-value text

        Parameters:
            text (str): config text
        """
        kvict = cls()
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            for sep in ("=", ":"):
                if sep in line:
                    key, val = line.split(sep, 1)
                    break
            else:
                raise ConfigError(f"Line {number} '{line}' is not key = value.")
            key = key.strip().lower().replace("-", "_")
            if not key:
                raise ConfigError(f"Line {number} has empty key.")
            kvict.add(key, val.strip())
        return kvict


    @classmethod
    def fromPath(cls, path):
        """
        Returns Kvict parsed from key-value text file at path
        """
        with open(path, "r", encoding="utf-8") as f:
            return cls.fromText(f.read())


    def nab(self, key, default=None):
        """
        Returns last value at key if key in dict else default
        """
        try:
            return self.getall(key)[-1]
        except KeyError:
            return default


    def naball(self, key, default=None):
        """
        Returns list of all values at key in insertion order else default
        """
        try:
            return self.getall(key)
        except KeyError:
            return default


    def nabInt(self, key, default=None):
        """
        Returns last value at key converted to int else default
        """
        val = self.nab(key)
        if val is None:
            return default
        try:
            return int(val)
        except (TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid int for {key}={val!r}.") from ex


    def nabFloat(self, key, default=None):
        """
        Returns last value at key converted to float else default
        """
        val = self.nab(key)
        if val is None:
            return default
        try:
            return float(val)
        except (TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid float for {key}={val!r}.") from ex


    def nabBool(self, key, default=None):
        """
        Returns last value at key converted to bool else default
        """
        val = self.nab(key)
        if val is None:
            return default
        if isinstance(val, bool):
            return val
        val = str(val).strip().lower()
        if val in self.Trues:
            return True
        if val in self.Falses:
            return False
        raise ConfigError(f"Invalid bool for {key}={val!r}.")


    def nabList(self, key, default=None, sep=","):
        """
        Returns list of stripped non empty items from all values at key, each
        value split on sep, else default
        """
        vals = self.naball(key)
        if vals is None:
            return default
        items = []
        for val in vals:
            if isinstance(val, (list, tuple)):
                items.extend(str(v).strip() for v in val)
            else:
                items.extend(part.strip() for part in str(val).split(sep))
        return [item for item in items if item]


    def nabTriple(self, key, default=None):
        """
        Returns last value at key such as '64x64x16' as tuple of three ints
        else default
        """
        val = self.nab(key)
        if val is None:
            return default
        if isinstance(val, (list, tuple)):
            parts = list(val)
        else:
            parts = str(val).lower().replace(",", "x").split("x")
        try:
            triple = tuple(int(part) for part in parts)
        except (TypeError, ValueError) as ex:
            raise ConfigError(f"Invalid triple for {key}={val!r}.") from ex
        if len(triple) != 3:
            raise ConfigError(f"Invalid triple for {key}={val!r}.")
        return triple


    def lasts(self):
        """
        Returns list of (key, value) pairs where each value is last value at key
        but with no duplicate keys.
        """
        keys = oset(self.keys())  # get rid of duplicates provided by .keys()
        return [(k, self.nab(k)) for k in keys]
