from rest_framework import serializers

from querylang.grammar import RESERVED_WORDS
from relations.exceptions import ValidationError as RelationValidationError
from relations.models import Attribute, GenDisjParaRelation, Scheme, Tuple, TupleSet


class AttributeSerializer(serializers.Serializer):
    name = serializers.CharField()
    domain = serializers.ListField(
        child=serializers.CharField(trim_whitespace=False),
        allow_empty=False,
    )

    def validate_name(self, value):
        if value in RESERVED_WORDS:
            raise serializers.ValidationError(f"'{value}' is a query keyword and cannot name an attribute.")
        return value

    def validate_domain(self, value):
        duplicates = sorted({v for v in value if value.count(v) > 1})
        if duplicates:
            raise serializers.ValidationError(
                f"Domain lists {', '.join(duplicates)} more than once."
            )
        return value


class SchemeSerializer(serializers.Serializer):
    """
    Scheme declarations in, schemes out.

    ``save()`` builds a ``relations.models.Scheme`` from validated data; on
    output a scheme renders as its name and attributes with their domains.
    """
    name = serializers.CharField()
    attributes = AttributeSerializer(many=True, allow_empty=False)

    def validate_attributes(self, value):
        names = [attribute['name'] for attribute in value]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise serializers.ValidationError(
                f"Attribute {', '.join(duplicates)} is declared more than once."
            )
        return value

    def create(self, validated_data):
        return Scheme(
            validated_data['name'],
            tuple(Attribute(a['name'], tuple(a['domain'])) for a in validated_data['attributes']),
        )


class RelationDeclarationSerializer(serializers.Serializer):
    """
    A relation declaration: the scheme it is bound to and its ``+``/``-`` statements.

    Expects the declared schemes in ``context['schemes']``.
    """
    name = serializers.CharField()
    scheme = serializers.CharField()
    positive = serializers.ListField(child=serializers.ListField(child=serializers.ListField()))
    negative = serializers.ListField(child=serializers.ListField(child=serializers.ListField()))

    def validate_name(self, value):
        if value in RESERVED_WORDS:
            raise serializers.ValidationError(f"'{value}' is a query keyword and cannot name a relation.")
        return value

    def validate_scheme(self, value):
        if value not in self.context.get('schemes', {}):
            raise serializers.ValidationError(f"Scheme '{value}' is not declared.")
        return value

    def _tuple_set(self, scheme, tuples, sign):
        if not tuples:
            raise serializers.ValidationError(f"Empty tuple set in a '{sign}' statement.")
        try:
            return TupleSet(Tuple(scheme, tuple(values)) for values in tuples)
        except RelationValidationError as exc:
            raise serializers.ValidationError(exc.message) from None

    def validate(self, data):
        scheme = self.context['schemes'][data['scheme']]
        data['positive'] = [self._tuple_set(scheme, s, '+') for s in data['positive']]
        data['negative'] = [self._tuple_set(scheme, s, '-') for s in data['negative']]
        data['scheme'] = scheme
        return data

    def create(self, validated_data):
        return GenDisjParaRelation(
            validated_data['scheme'],
            validated_data['positive'],
            validated_data['negative'],
        )


class RelationSerializer(serializers.Serializer):
    """
    Any relation level as JSON.

    Tuple sets become arrays of tuples, definite tuples stay single objects,
    and every tuple is an object keyed by attribute in scheme order.
    """
    scheme = SchemeSerializer(read_only=True)
    positive = serializers.SerializerMethodField()
    negative = serializers.SerializerMethodField()

    def _tuple(self, t, scheme):
        return {name: t[name] for name in scheme.attribute_names}

    def _component(self, items, scheme):
        return [
            self._tuple(item, scheme) if isinstance(item, Tuple)
            else [self._tuple(t, scheme) for t in sorted(item)]
            for item in items
        ]

    def get_positive(self, obj):
        return self._component(obj.positive, obj.scheme)

    def get_negative(self, obj):
        return self._component(obj.negative, obj.scheme)


class ViolationSerializer(serializers.Serializer):
    trial = serializers.IntegerField()
    operator = serializers.CharField()
    seed = serializers.CharField()
    inputs = serializers.ListField(child=serializers.CharField())
    detail = serializers.CharField()
    only_left = serializers.ListField(child=serializers.CharField())
    only_right = serializers.ListField(child=serializers.CharField())


class CheckReportSerializer(serializers.Serializer):
    theorem = serializers.CharField()
    trials = serializers.IntegerField()
    completed = serializers.IntegerField()
    skipped = serializers.IntegerField()
    violations = ViolationSerializer(many=True)
    closure_only = serializers.ListField(child=serializers.CharField())
    notes = serializers.ListField(child=serializers.CharField())
