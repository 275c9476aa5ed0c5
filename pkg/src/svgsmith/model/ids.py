"""Path id management: contiguous path_1..path_M renumbering."""


def renumber_ids(doc, primitives=None):
    """Rewrite ids to path_1..path_M in document order (in place).

    Returns a map of changed ids only, old -> new. When the raw primitive
    list is supplied its ids are rewritten in lockstep.
    """
    mapping = {}
    for index, path in enumerate(doc.paths):
        new_id = f"path_{index + 1}"
        if path.id != new_id:
            if path.id:
                mapping[path.id] = new_id
            path.id = new_id
        if primitives is not None:
            primitives[index].id = new_id
    return mapping
