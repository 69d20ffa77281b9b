RESERVED_WORDS = ('exists', 'in', 'always', 'some', 'at', 'top', 'timeline')

GRAMMAR = r'''
    program: rule*

    rule: body "->" head "."
    body: literal ("," literal)*
    head: existentials? literal ("," literal)*
    existentials: "exists" VARIABLE ("," VARIABLE)* "."

    query: existentials? literal ("," literal)* "."?

    stream: "timeline" INT INT "." fact_line*
    fact_line: ("@" | "at") INT atom "."

    exrules: (ex_rule | ex_fact)*
    ex_rule: ex_body "->" ex_head "."
    ex_fact: atom "."
    ex_body: ex_literal ("," ex_literal)*
    ex_head: existentials? atom ("," atom)*
    ?ex_literal: atom | leq | plus

    ?literal: plain | at | win_box | win_diamond | win_at | leq | plus
    plain: atom
    at: ("@" | "at") time atom
    win_box: "in" INT "always" atom
    win_diamond: "in" INT "some" atom
    win_at: "in" INT ("at" | "@") time atom
    leq: time "<=" time
    plus: time "=" time "+" time

    atom: NAME ("(" term ("," term)* ")")?
        | "top" -> top

    ?time: VARIABLE | INT
    ?term: VARIABLE | NAME | INT | NULL

    VARIABLE: /[A-Z][A-Za-z0-9_]*/
    NAME: /[a-z][A-Za-z0-9_]*/
    NULL: /_:[A-Za-z0-9_]+/
    COMMENT: /%[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
'''
