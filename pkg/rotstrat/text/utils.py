from textwrap import wrap as wrap_text


def add_border(text, width=78, align='left'):
    '''
    Description
    ------------
    Adds a border around text. Used for the run log banner and the
    snapshot inspection header.

    Parameters
    ------------
    text : str
        Text to enclose in a border. Line breaks are preserved.
    width : int
        Maximum content width; longer lines are wrapped.
    align : str
        • 'left' → aligns text along the left margin
        • 'center' → centers text between the margins

    Returns
    ------------
    out : str
        Text enclosed in a border.
    '''
    if align not in ('left', 'center'):
        raise ValueError(
            f"'align' must be in ['left', 'center'], got: {align!r}."
            )

    lines = []
    for raw in text.splitlines() or ['']:
        lines.extend(wrap_text(raw, width) or [''])

    max_width = len(max(lines, key=len))
    border_edge = '-' * (max_width + 2)

    if align == 'left':
        content = [
            '| ' + line.ljust(max_width) + ' |'
            for line in lines
            ]
    else:
        content = [
            '| ' + line.center(max_width) + ' |'
            for line in lines
            ]

    return '\n'.join([
        '╭' + border_edge + '╮',
        *content,
        '╰' + border_edge + '╯',
        ])


def split_list(text, sep=','):
    '''
    Description
    ------------
    Splits a delimited string into a list of stripped, non-empty items.

    Parameters
    ------------
    text : str | list
        Delimited text. Lists are returned as stripped copies.
    sep : str
        Delimiter.

    Returns
    ------------
    out : list[str]
        Items in order of appearance with duplicates removed.
    '''
    items = text if isinstance(text, list) else text.split(sep)
    out = []
    for item in items:
        item = str(item).strip()
        if item and item not in out:
            out.append(item)
    return out


def natural_join(items, operator='and'):
    '''
    Description
    ------------
    Joins names into an English list for error messages, e.g. the unknown
    keys of a scenario file.

    Examples
    ------------
    • ['grid.M'] → 'grid.M'
    • ['psi', 'psi_bar'] → 'psi and psi_bar'
    • ['g', '+', '-'] with operator='or' → 'g, +, or -'
    '''
    if isinstance(items, str):
        return items

    *head, last = [str(x) for x in items] or [None]
    if last is None:
        raise ValueError("'items' cannot be empty.")
    if not head:
        return last
    if len(head) == 1:
        return f'{head[0]} {operator} {last}'
    return f"{', '.join(head)}, {operator} {last}"
