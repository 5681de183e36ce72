import re
import json

from astropy.utils.exceptions import AstropyUserWarning


class CircstabError(Exception):
    pass

class InvalidGroupError(CircstabError, ValueError):
    pass

class CoprimalityError(CircstabError, ValueError):
    pass

class ParityError(CircstabError, ValueError):
    pass

class GraphError(CircstabError, ValueError):
    pass

class DegreeMismatchError(CircstabError, ValueError):
    pass

class ParameterError(CircstabError, ValueError):
    pass

class SizeLimitError(CircstabError):
    pass

class TransitivityError(CircstabError):
    pass


class ConnectionSetError(CircstabError, ValueError):
    """
    Raised when a connection set is empty, contains the identity or is not
    closed under inverses. ``element`` holds the offending element, if any.
    """

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class SurveyIOError(CircstabError, OSError):
    """
    Raised when survey results cannot be persisted. The aggregate collected
    up to the failure is kept on ``aggregate``.
    """

    def __init__(self, message, aggregate=None):
        super().__init__(message)
        self.aggregate = aggregate


class CircstabWarning(AstropyUserWarning):
    pass


def check_size(size, limit, what='graph'):
    """
    Raise `SizeLimitError` if ``size`` exceeds ``limit``.
    """
    if size > limit:
        raise SizeLimitError("{} of size {} exceeds the configured limit of "
                             "{}".format(what, size, limit))


def iter_bits(mask):
    """
    Yield the indices of the set bits of ``mask`` in increasing order.
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask):
    return list(iter_bits(mask))


def list_to_bits(indices):
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def map_bits(mask, perm):
    """
    Image of the vertex set ``mask`` under the permutation ``perm``.
    """
    image = 0
    for i in iter_bits(mask):
        image |= 1 << perm[i]
    return image


_TUPLE = re.compile(r'\(([^()]*)\)')


def parse_int_set(text):
    """
    Parse a comma separated list of integers such as ``"1,-1,11,-11"``.

    Parameters
    ----------
    text : str
        The connection set as typed on the command line. Negative values
        are kept; reduction modulo the group order happens on construction.

    Returns
    -------
    list of int
    """
    items = [item.strip() for item in text.split(',') if item.strip()]
    if not items:
        raise ConnectionSetError("Empty connection set")
    try:
        return [int(item) for item in items]
    except ValueError:
        raise ConnectionSetError("Cannot parse connection set '{}'"
                                 .format(text))


def parse_tuple_set(text):
    """
    Parse a set of product-group elements such as ``"(2,2),(0,2),(1,3)"``.
    """
    found = _TUPLE.findall(text)
    leftover = _TUPLE.sub('', text).replace(',', '').strip()
    if not found or leftover:
        raise ConnectionSetError("Cannot parse connection set '{}'"
                                 .format(text))
    try:
        return [tuple(int(x) for x in item.split(',')) for item in found]
    except ValueError:
        raise ConnectionSetError("Cannot parse connection set '{}'"
                                 .format(text))


def parse_factors(text):
    """
    Parse a group descriptor such as ``"4x4"`` or ``"12"`` into a list of
    invariant factors.
    """
    try:
        return [int(part) for part in text.lower().split('x')]
    except ValueError:
        raise InvalidGroupError("Cannot parse group '{}'".format(text))


def parse_set(text):
    """
    Parse a connection set, choosing tuple or integer syntax by content.
    """
    if '(' in text:
        return parse_tuple_set(text)
    return parse_int_set(text)


def dumps(obj):
    """
    Serialize a report the way the command line prints it.
    """
    return json.dumps(obj, indent=2)
