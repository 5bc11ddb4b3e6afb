QUERY_GRAMMAR = r"""
?query: expr

?expr: WORD                                     -> relref
     | "select" "[" formula "]" "(" expr ")"    -> select
     | "project" "[" attributes "]" "(" expr ")" -> project
     | "union" "(" expr "," expr ")"            -> union
     | "intersect" "(" expr "," expr ")"        -> intersect
     | "join" "(" expr "," expr ")"             -> join
     | "not" "(" expr ")"                       -> complement

attributes: WORD ("," WORD)*

?formula: formula "|" conjunction -> or_formula
        | conjunction

?conjunction: conjunction "&" negation -> and_formula
            | negation

?negation: "!" negation -> not_formula
         | primary

?primary: "(" formula ")"
        | "true"                -> always
        | "false"               -> never
        | operand "=" operand   -> equal
        | operand "!=" operand  -> not_equal

?operand: WORD   -> name
        | QUOTED -> const

WORD: /[A-Za-z0-9_]+/
QUOTED: /'[^'\n]*'/

COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

RESERVED_WORDS = frozenset({
    'select', 'project', 'union', 'intersect', 'join', 'not', 'true', 'false',
})
