#include "spets/parse.hpp"

#include <cctype>

#include "spets/errors.hpp"

namespace spets {

namespace {

bool digit(char c) { return c >= '0' && c <= '9'; }

long read_long(const std::string& s, size_t& i) {
  size_t start = i;
  while (i < s.size() && digit(s[i])) ++i;
  if (i == start) throw ParseError("number expected in: " + s);
  return std::stol(s.substr(start, i - start));
}

mpq_class read_rational(const std::string& s, size_t& i) {
  size_t start = i;
  while (i < s.size() && digit(s[i])) ++i;
  if (i == start) throw ParseError("number expected in: " + s);
  std::string num = s.substr(start, i - start);
  if (i < s.size() && s[i] == '/') {
    size_t save = i;
    ++i;
    size_t dstart = i;
    while (i < s.size() && digit(s[i])) ++i;
    if (i == dstart) {
      i = save;
      return parse_rational(num);
    }
    return parse_rational(num + "/" + s.substr(dstart, i - dstart));
  }
  return parse_rational(num);
}

// z{m} or z{m}^{k}
CycloNum read_root(const std::string& s, size_t& i) {
  ++i;  // 'z'
  long m = read_long(s, i);
  long k = 1;
  if (i < s.size() && s[i] == '^') {
    ++i;
    k = read_long(s, i);
  }
  return CycloNum::root_of_unity(m, k);
}

CycloNum parse_cyclo_span(const std::string& s, size_t begin, size_t end) {
  CycloNum acc;
  size_t i = begin;
  if (i >= end) throw ParseError("empty value");
  while (i < end) {
    bool neg = false;
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      neg = true;
      ++i;
    }
    CycloNum term;
    if (i < end && s[i] == 'z') {
      term = read_root(s, i);
    } else {
      mpq_class c = read_rational(s, i);
      if (i < end && s[i] == '*') {
        ++i;
        if (i >= end || s[i] != 'z') throw ParseError("root expected in: " + s);
        term = CycloNum(c) * read_root(s, i);
      } else {
        term = CycloNum(c);
      }
    }
    acc += neg ? -term : term;
  }
  return acc;
}

}  // namespace

CycloNum parse_cyclo(const std::string& s) {
  CycloNum c = parse_cyclo_span(s, 0, s.size());
  return c;
}

LaurentX parse_laurent(const std::string& s, const std::string& var) {
  if (s == "0") return LaurentX();
  if (var.size() != 1) throw ParseError("single-character variable expected");
  char vc = var[0];
  LaurentX acc;
  size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+') {
      ++i;
    } else if (s[i] == '-') {
      neg = true;
      ++i;
    }
    CycloNum coeff(1L);
    bool have_coeff = false;
    if (i < s.size() && s[i] == '(') {
      size_t depth = 1, j = i + 1;
      while (j < s.size() && depth) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')') --depth;
        ++j;
      }
      if (depth) throw ParseError("unbalanced parentheses in: " + s);
      coeff = parse_cyclo_span(s, i + 1, j - 1);
      i = j;
      have_coeff = true;
    } else if (i < s.size() && digit(s[i])) {
      coeff = CycloNum(read_rational(s, i));
      have_coeff = true;
    }
    if (neg) coeff = -coeff;
    if (i < s.size() && s[i] == '*') ++i;
    long num = 0, den = 1;
    if (i < s.size() && s[i] == vc) {
      ++i;
      num = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i < s.size() && s[i] == '(') {
          ++i;
          bool eneg = false;
          if (s[i] == '-') {
            eneg = true;
            ++i;
          }
          num = read_long(s, i);
          if (eneg) num = -num;
          if (i < s.size() && s[i] == '/') {
            ++i;
            den = read_long(s, i);
          }
          if (i >= s.size() || s[i] != ')') throw ParseError("')' expected in: " + s);
          ++i;
        } else {
          num = read_long(s, i);
        }
      }
    } else if (!have_coeff) {
      throw ParseError("term expected in: " + s);
    }
    acc += LaurentX::monomial(coeff, num, den);
  }
  return acc;
}

RatFun parse_ratfun(const std::string& s, const std::string& var) {
  if (!s.empty() && s[0] == '(') {
    size_t depth = 1, j = 1;
    while (j < s.size() && depth) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')') --depth;
      ++j;
    }
    if (!depth && j + 1 < s.size() && s[j] == '/' && s[j + 1] == '(' && s.back() == ')') {
      LaurentX num = parse_laurent(s.substr(1, j - 2), var);
      LaurentX den = parse_laurent(s.substr(j + 2, s.size() - j - 3), var);
      return RatFun(num, den);
    }
  }
  return RatFun(parse_laurent(s, var));
}

}  // namespace spets
