"""
Parser recursive-descent para MiniJ.

Gramática (resumo):

    program   := (globalDecl | funcDecl)*
    globalDecl:= type ident ["=" expr] ";"
    funcDecl  := "fn" ident "(" params? ")" [":" type] block
    stmt      := varDecl | assign | if | while | do-while | for | switch
               | return | print | call ";" | block

Os corpos de if/while/for/do são sempre guardados como Block: um statement
simples é embrulhado num bloco.
"""

from typing import List, Optional, Sequence, Tuple

from common.frontend.tokens import SourceToken, TokenKind
from common.frontend.syntax import (
    Program, GlobalDecl, FuncDecl, Param, Block, VarDecl, Assign, If, While,
    DoWhile, For, Case, Switch, Return, ExprStmt, Print, IntLit, StrLit,
    BoolLit, Name, Index, Call, Read, NewArray, Unary, Binary,
    INT, INT_ARRAY, PRECEDENCE, COMPOUND_OPS,
)
from common.utils.errors import ParseError


TYPE_KEYWORDS = ("int", "bool", "str")

# Níveis binários, do mais fraco para o mais forte
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("==", "!="),
    ("<", "<=", ">", ">="),
    ("+", "-"),
    ("*", "/", "%"),
)
assert all(PRECEDENCE[op] == i + 1 for i, level in enumerate(_BINARY_LEVELS) for op in level)


class Parser:
    """Parser de um só uso sobre uma sequência de tokens."""

    def __init__(self, tokens: Sequence[SourceToken]):
        self.tokens = list(tokens)
        self.index = 0

    # ========================================================================
    # Utilitários
    # ========================================================================

    def _peek(self, offset: int = 0) -> Optional[SourceToken]:
        i = self.index + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def _check(self, lexeme: str, offset: int = 0) -> bool:
        tok = self._peek(offset)
        return tok is not None and tok.lexeme == lexeme and tok.kind != TokenKind.STRING_LITERAL

    def _error(self, expected) -> ParseError:
        tok = self._peek()
        if tok is None:
            return ParseError(None, expected, "end of input")
        return ParseError(tok.position, expected, repr(tok.lexeme))

    def _expect(self, lexeme: str) -> SourceToken:
        if not self._check(lexeme):
            raise self._error([lexeme])
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _accept(self, lexeme: str) -> bool:
        if self._check(lexeme):
            self.index += 1
            return True
        return False

    def _ident(self) -> SourceToken:
        tok = self._peek()
        if tok is None or tok.kind != TokenKind.IDENTIFIER:
            raise self._error(["identifier"])
        self.index += 1
        return tok

    def _at_type(self) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == TokenKind.KEYWORD and tok.lexeme in TYPE_KEYWORDS

    def _type(self) -> str:
        if not self._at_type():
            raise self._error(TYPE_KEYWORDS)
        base = self.tokens[self.index].lexeme
        self.index += 1
        if base == INT and self._check("[") and self._check("]", 1):
            self.index += 2
            return INT_ARRAY
        return base

    # ========================================================================
    # Topo
    # ========================================================================

    def parse_program(self) -> Program:
        decls = []
        while self._peek() is not None:
            if self._check("fn"):
                decls.append(self._func_decl())
            elif self._at_type():
                start = self._peek().position
                type_ = self._type()
                name = self._ident().lexeme
                init = self._expr() if self._accept("=") else None
                self._expect(";")
                decls.append(GlobalDecl(type_, name, init, pos=start))
            else:
                raise self._error(["fn", *TYPE_KEYWORDS])
        return Program(tuple(decls))

    def _func_decl(self) -> FuncDecl:
        start = self._expect("fn").position
        name = self._ident().lexeme
        self._expect("(")
        params: List[Param] = []
        if not self._check(")"):
            while True:
                p_start = self._peek().position if self._peek() else None
                if self._at_type():
                    params.append(Param(self._type(), self._ident().lexeme, True, pos=p_start))
                else:
                    params.append(Param(INT, self._ident().lexeme, False, pos=p_start))
                if not self._accept(","):
                    break
        self._expect(")")
        ret_type = self._type() if self._accept(":") else None
        body = self._block()
        return FuncDecl(name, tuple(params), ret_type, body, pos=start)

    # ========================================================================
    # Statements
    # ========================================================================

    def _block(self) -> Block:
        start = self._expect("{").position
        stmts = []
        while not self._check("}"):
            if self._peek() is None:
                raise self._error(["}"])
            stmts.append(self._stmt())
        self._expect("}")
        return Block(tuple(stmts), pos=start)

    def _body(self) -> Block:
        """Corpo de if/while/for/do: bloco ou statement simples embrulhado."""
        if self._check("{"):
            return self._block()
        stmt = self._stmt()
        return Block((stmt,), pos=stmt.pos)

    def _stmt(self):
        tok = self._peek()
        if tok is None:
            raise self._error(["statement"])
        start = tok.position

        if self._check("{"):
            return self._block()
        if self._at_type():
            decl = self._var_decl()
            self._expect(";")
            return decl
        if self._accept("if"):
            self._expect("(")
            cond = self._expr()
            self._expect(")")
            then = self._body()
            orelse = None
            if self._accept("else"):
                orelse = self._body()
            return If(cond, then, orelse, pos=start)
        if self._accept("while"):
            self._expect("(")
            cond = self._expr()
            self._expect(")")
            return While(cond, self._body(), pos=start)
        if self._accept("do"):
            body = self._body()
            self._expect("while")
            self._expect("(")
            cond = self._expr()
            self._expect(")")
            self._expect(";")
            return DoWhile(body, cond, pos=start)
        if self._accept("for"):
            return self._for(start)
        if self._accept("switch"):
            return self._switch(start)
        if self._accept("return"):
            value = None if self._check(";") else self._expr()
            self._expect(";")
            return Return(value, pos=start)
        if self._accept("print"):
            self._expect("(")
            value = self._expr()
            self._expect(")")
            self._expect(";")
            return Print(value, pos=start)
        if tok.kind == TokenKind.IDENTIFIER:
            if self._check("(", 1):
                call = self._primary()
                self._expect(";")
                return ExprStmt(call, pos=start)
            stmt = self._assign()
            self._expect(";")
            return stmt
        raise self._error(["statement"])

    def _var_decl(self) -> VarDecl:
        start = self._peek().position
        type_ = self._type()
        name = self._ident().lexeme
        init = self._expr() if self._accept("=") else None
        return VarDecl(type_, name, init, pos=start)

    def _assign(self) -> Assign:
        start = self._peek().position
        name_tok = self._ident()
        target = Name(name_tok.lexeme, pos=name_tok.position)
        if self._accept("["):
            index = self._expr()
            self._expect("]")
            target = Index(target, index, pos=name_tok.position)
        tok = self._peek()
        if tok is None or tok.lexeme not in ("=",) + COMPOUND_OPS:
            raise self._error(("=",) + COMPOUND_OPS)
        self.index += 1
        value = self._expr()
        return Assign(target, tok.lexeme, value, pos=start)

    def _for(self, start) -> For:
        self._expect("(")
        init = None
        if not self._check(";"):
            init = self._var_decl() if self._at_type() else self._assign()
        self._expect(";")
        cond = None if self._check(";") else self._expr()
        self._expect(";")
        update = None if self._check(")") else self._assign()
        self._expect(")")
        return For(init, cond, update, self._body(), pos=start)

    def _switch(self, start) -> Switch:
        self._expect("(")
        selector = self._expr()
        self._expect(")")
        self._expect("{")
        cases = []
        default = None
        while not self._check("}"):
            if self._accept("case"):
                c_start = self.tokens[self.index - 1].position
                negative = self._accept("-")
                tok = self._peek()
                if tok is None or tok.kind != TokenKind.INT_LITERAL:
                    raise self._error(["int-literal"])
                self.index += 1
                value = -int(tok.lexeme) if negative else int(tok.lexeme)
                self._expect(":")
                cases.append(Case(value, self._arm_body(), pos=c_start))
            elif self._accept("default"):
                if default is not None:
                    raise self._error(["case", "}"])
                self._expect(":")
                default = self._arm_body()
            else:
                raise self._error(["case", "default", "}"])
        self._expect("}")
        return Switch(selector, tuple(cases), default, pos=start)

    def _arm_body(self) -> Tuple:
        stmts = []
        while not (self._check("case") or self._check("default") or self._check("}")):
            if self._peek() is None:
                raise self._error(["}"])
            stmts.append(self._stmt())
        return tuple(stmts)

    # ========================================================================
    # Expressões
    # ========================================================================

    def _expr(self, level: int = 0):
        if level == len(_BINARY_LEVELS):
            return self._unary()
        left = self._expr(level + 1)
        while True:
            tok = self._peek()
            if tok is None or tok.kind != TokenKind.OPERATOR or tok.lexeme not in _BINARY_LEVELS[level]:
                return left
            self.index += 1
            right = self._expr(level + 1)
            left = Binary(tok.lexeme, left, right, pos=tok.position)

    def _unary(self):
        tok = self._peek()
        if tok is not None and tok.kind == TokenKind.OPERATOR and tok.lexeme in ("-", "!"):
            self.index += 1
            return Unary(tok.lexeme, self._unary(), pos=tok.position)
        return self._postfix()

    def _postfix(self):
        expr = self._primary()
        while self._check("["):
            start = self._expect("[").position
            index = self._expr()
            self._expect("]")
            expr = Index(expr, index, pos=start)
        return expr

    def _primary(self):
        tok = self._peek()
        if tok is None:
            raise self._error(["expression"])
        start = tok.position

        if tok.kind == TokenKind.INT_LITERAL:
            self.index += 1
            return IntLit(int(tok.lexeme), pos=start)
        if tok.kind == TokenKind.STRING_LITERAL:
            self.index += 1
            return StrLit(tok.lexeme, pos=start)
        if tok.kind == TokenKind.BOOL_LITERAL:
            self.index += 1
            return BoolLit(tok.lexeme == "true", pos=start)
        if self._accept("read"):
            self._expect("(")
            self._expect(")")
            return Read(pos=start)
        if self._accept("new"):
            self._expect("int")
            self._expect("[")
            size = self._expr()
            self._expect("]")
            return NewArray(size, pos=start)
        if self._accept("("):
            inner = self._expr()
            self._expect(")")
            return inner
        if tok.kind == TokenKind.IDENTIFIER:
            self.index += 1
            if self._accept("("):
                args = []
                if not self._check(")"):
                    while True:
                        args.append(self._expr())
                        if not self._accept(","):
                            break
                self._expect(")")
                return Call(tok.lexeme, tuple(args), pos=start)
            return Name(tok.lexeme, pos=start)
        raise self._error(["expression"])


def parse_tokens(tokens: Sequence[SourceToken]) -> Program:
    """
    Faz o parsing sintático (sem resolução de nomes).

    Args:
        tokens: Tokens produzidos por lex()

    Returns:
        AST do programa

    Raises:
        ParseError: Token inesperado
    """
    return Parser(tokens).parse_program()


def parse(tokens: Sequence[SourceToken]) -> Program:
    """
    Parsing seguido de resolução de nomes.

    Args:
        tokens: Tokens produzidos por lex()

    Returns:
        AST resolvida

    Raises:
        ParseError: Token inesperado
        ResolveError: Nome não resolvido, duplicado ou `main` em falta
    """
    # Import local: o resolver depende apenas da AST
    from common.frontend.resolver import resolve

    program = parse_tokens(tokens)
    resolve(program)
    return program
