"""Text and JSON renderings of results, information content listings and check reports."""
from rest_framework.renderers import JSONRenderer

from relations.canonical import canonical_family

from .api.serializers import CheckReportSerializer, RelationSerializer
from .dbfile import format_relation, format_scheme


def render_json(data):
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8') + '\n'


def relation_text(relation, name='result'):
    """A relation as a self-contained database text: its scheme block and one relation block."""
    return f"{format_scheme(relation.scheme)}\n\n{format_relation(name, relation)}\n"


def relation_json(relation):
    return render_json(RelationSerializer(relation).data)


def members_text(scheme, members, prefix='member'):
    """Numbered relation blocks, loadable together with the scheme block."""
    blocks = [format_scheme(scheme)]
    blocks.extend(
        format_relation(f"{prefix}_{index}", member)
        for index, member in enumerate(canonical_family(members), start=1)
    )
    return '\n\n'.join(blocks) + '\n'


def grouped_members_text(scheme, groups):
    """Like ``members_text`` for a list of member families: ``world_<group>_<member>``."""
    blocks = [format_scheme(scheme)]
    for group, members in enumerate(groups, start=1):
        blocks.extend(
            format_relation(f"world_{group}_{index}", member)
            for index, member in enumerate(canonical_family(members), start=1)
        )
    return '\n\n'.join(blocks) + '\n'


def members_json(relation_name, level, members):
    return render_json({
        'relation': relation_name,
        'level': level,
        'members': RelationSerializer(canonical_family(members), many=True).data,
    })


def grouped_members_json(relation_name, groups):
    return render_json({
        'relation': relation_name,
        'level': 'dp',
        'members': [
            RelationSerializer(canonical_family(members), many=True).data
            for members in groups
        ],
    })


def report_text(report):
    lines = [
        f"theorem {report.theorem}: {report.completed} of {report.trials} trial(s) completed, "
        f"{report.skipped} skipped by the cap, {len(report.violations)} violation(s)",
    ]
    for violation in report.violations:
        lines.append(f"  VIOLATION trial {violation.trial} [{violation.operator}] seed {violation.seed}")
        lines.append(f"    {violation.detail}")
        lines.extend(f"    input: {text}" for text in violation.inputs)
        lines.extend(f"    only in left: {text}" for text in violation.only_left)
        lines.extend(f"    only in right: {text}" for text in violation.only_right)
    lines.extend(f"  closure-only: {entry}" for entry in report.closure_only)
    lines.extend(f"  note: {note}" for note in report.notes)
    return '\n'.join(lines) + '\n'


def reports_json(reports):
    return render_json(CheckReportSerializer(reports, many=True).data)
