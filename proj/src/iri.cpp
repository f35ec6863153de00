#include "ontolint/iri.hpp"

#include <cctype>
#include <vector>

namespace ontolint {
namespace {

bool is_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_hex(char32_t c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

bool is_sub_delim(char32_t c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}

// RFC 3987 ucschar ranges.
bool is_ucschar(char32_t c) {
  if (c >= 0xA0 && c <= 0xD7FF) return true;
  if (c >= 0xF900 && c <= 0xFDCF) return true;
  if (c >= 0xFDF0 && c <= 0xFFEF) return true;
  // plane ranges %x10000-1FFFD .. %xD0000-DFFFD and %xE1000-EFFFD
  if (c >= 0x10000 && c <= 0xDFFFD && (c & 0xFFFF) <= 0xFFFD) return true;
  if (c >= 0xE1000 && c <= 0xEFFFD) return true;
  return false;
}

bool is_iprivate(char32_t c) {
  return (c >= 0xE000 && c <= 0xF8FF) || (c >= 0xF0000 && c <= 0xFFFFD) ||
         (c >= 0x100000 && c <= 0x10FFFD);
}

bool is_iunreserved(char32_t c) {
  return is_alpha(c) || is_digit(c) || c == '-' || c == '.' || c == '_' || c == '~' ||
         is_ucschar(c);
}

struct Cp {
  char32_t value;
  std::size_t offset;  // byte offset in the original string
};

// Decodes UTF-8; on malformed input returns the byte offset of the bad byte.
std::optional<std::size_t> decode_utf8(std::string_view s, std::vector<Cp>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    std::size_t len;
    char32_t cp;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) return i + k;
      cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms and surrogates are malformed.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000))
      return i;
    if (cp >= 0xD800 && cp <= 0xDFFF) return i;
    if (cp > 0x10FFFF) return i;
    out.push_back({cp, i});
    i += len;
  }
  return std::nullopt;
}

class IriScanner {
 public:
  explicit IriScanner(const std::vector<Cp>& cps, std::size_t total_bytes)
      : cps_(cps), total_bytes_(total_bytes) {}

  std::optional<IriViolation> run() {
    if (auto v = scheme()) return v;
    // hier-part
    if (peek() == '/' && peek(1) == '/') {
      pos_ += 2;
      if (auto v = authority()) return v;
      if (auto v = path(true)) return v;
    } else {
      if (auto v = path(false)) return v;
    }
    if (peek() == '?') {
      ++pos_;
      if (auto v = component("query", true)) return v;
    }
    if (peek() == '#') {
      ++pos_;
      if (auto v = component("fragment", false)) return v;
    }
    if (pos_ < cps_.size()) return fail("iri");
    return std::nullopt;
  }

 private:
  static constexpr char32_t kEnd = 0xFFFFFFFF;

  char32_t peek(std::size_t ahead = 0) const {
    return pos_ + ahead < cps_.size() ? cps_[pos_ + ahead].value : kEnd;
  }
  std::size_t byte_at(std::size_t p) const {
    return p < cps_.size() ? cps_[p].offset : total_bytes_;
  }
  IriViolation fail(std::string rule) const {
    char32_t c = peek();
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') rule = "whitespace-forbidden";
    return IriViolation{byte_at(pos_), std::move(rule)};
  }

  std::optional<IriViolation> scheme() {
    if (!is_alpha(peek())) return fail("scheme");
    ++pos_;
    while (true) {
      char32_t c = peek();
      if (c == ':') {
        ++pos_;
        return std::nullopt;
      }
      if (is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.') {
        ++pos_;
        continue;
      }
      return fail("scheme");
    }
  }

  bool pct_encoded() {
    if (peek() != '%') return false;
    if (is_hex(peek(1)) && is_hex(peek(2))) {
      pos_ += 3;
      return true;
    }
    return false;
  }

  std::optional<IriViolation> authority() {
    // IP-literal: bracketed, validated loosely (hex digits, ':', '.').
    if (peek() == '[') {
      ++pos_;
      while (true) {
        char32_t c = peek();
        if (c == ']') {
          ++pos_;
          break;
        }
        if (is_hex(c) || c == ':' || c == '.' || c == 'v' || c == 'V') {
          ++pos_;
          continue;
        }
        return fail("ip-literal");
      }
    } else {
      // userinfo@host collapsed: scan iunreserved/sub-delims/pct/':'/'@'.
      while (true) {
        char32_t c = peek();
        if (c == kEnd || c == '/' || c == '?' || c == '#') return std::nullopt;
        if (c == '%') {
          if (!pct_encoded()) return fail("pct-encoded");
          continue;
        }
        if (is_iunreserved(c) || is_sub_delim(c) || c == ':' || c == '@') {
          ++pos_;
          continue;
        }
        return fail("authority");
      }
    }
    // after IP-literal: optional :port
    if (peek() == ':') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    char32_t c = peek();
    if (c == kEnd || c == '/' || c == '?' || c == '#') return std::nullopt;
    return fail("authority");
  }

  std::optional<IriViolation> path(bool after_authority) {
    // path-rootless without authority must not start with "//" (handled by
    // caller); otherwise any sequence of ipchar and '/'.
    (void)after_authority;
    while (true) {
      char32_t c = peek();
      if (c == kEnd || c == '?' || c == '#') return std::nullopt;
      if (c == '%') {
        if (!pct_encoded()) return fail("pct-encoded");
        continue;
      }
      if (c == '/' || is_iunreserved(c) || is_sub_delim(c) || c == ':' || c == '@') {
        ++pos_;
        continue;
      }
      return fail("path");
    }
  }

  std::optional<IriViolation> component(const char* rule, bool allow_private) {
    while (true) {
      char32_t c = peek();
      if (c == kEnd) return std::nullopt;
      if (rule[0] == 'q' && c == '#') return std::nullopt;
      if (c == '%') {
        if (!pct_encoded()) return fail("pct-encoded");
        continue;
      }
      if (c == '/' || c == '?' || is_iunreserved(c) || is_sub_delim(c) || c == ':' || c == '@' ||
          (allow_private && is_iprivate(c))) {
        ++pos_;
        continue;
      }
      return fail(rule);
    }
  }

  const std::vector<Cp>& cps_;
  std::size_t total_bytes_;
  std::size_t pos_ = 0;
};

struct IriParts {
  std::string scheme, authority, path, query, fragment;
  bool has_scheme = false, has_authority = false, has_query = false, has_fragment = false;
};

// Lenient component split per RFC 3986 appendix B.
IriParts split_iri(std::string_view s) {
  IriParts p;
  auto hash = s.find('#');
  if (hash != std::string_view::npos) {
    p.has_fragment = true;
    p.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  auto q = s.find('?');
  if (q != std::string_view::npos) {
    p.has_query = true;
    p.query = std::string(s.substr(q + 1));
    s = s.substr(0, q);
  }
  auto colon = s.find(':');
  auto slash = s.find('/');
  if (colon != std::string_view::npos && (slash == std::string_view::npos || colon < slash) &&
      colon > 0 && is_alpha(static_cast<unsigned char>(s[0]))) {
    bool ok = true;
    for (std::size_t i = 1; i < colon; ++i) {
      char c = s[i];
      if (!(is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.')) ok = false;
    }
    if (ok) {
      p.has_scheme = true;
      p.scheme = std::string(s.substr(0, colon));
      s = s.substr(colon + 1);
    }
  }
  if (s.size() >= 2 && s[0] == '/' && s[1] == '/') {
    s = s.substr(2);
    auto end = s.find('/');
    p.has_authority = true;
    if (end == std::string_view::npos) {
      p.authority = std::string(s);
      s = {};
    } else {
      p.authority = std::string(s.substr(0, end));
      s = s.substr(end);
    }
  }
  p.path = std::string(s);
  return p;
}

std::string remove_dot_segments(std::string path) {
  std::string out;
  while (!path.empty()) {
    if (path.rfind("../", 0) == 0) {
      path.erase(0, 3);
    } else if (path.rfind("./", 0) == 0) {
      path.erase(0, 2);
    } else if (path.rfind("/./", 0) == 0) {
      path.erase(0, 2);
    } else if (path == "/.") {
      path = "/";
    } else if (path.rfind("/../", 0) == 0) {
      path.erase(0, 3);
      auto pos = out.find_last_of('/');
      out.erase(pos == std::string::npos ? 0 : pos);
    } else if (path == "/..") {
      path = "/";
      auto pos = out.find_last_of('/');
      out.erase(pos == std::string::npos ? 0 : pos);
    } else if (path == "." || path == "..") {
      path.clear();
    } else {
      std::size_t start = path[0] == '/' ? 1 : 0;
      auto pos = path.find('/', start);
      if (pos == std::string::npos) pos = path.size();
      out.append(path, 0, pos);
      path.erase(0, pos);
    }
  }
  return out;
}

std::string merge_paths(const IriParts& base, const std::string& ref_path) {
  if (base.has_authority && base.path.empty()) return "/" + ref_path;
  auto pos = base.path.find_last_of('/');
  if (pos == std::string::npos) return ref_path;
  return base.path.substr(0, pos + 1) + ref_path;
}

std::string recompose(const IriParts& p) {
  std::string out;
  if (p.has_scheme) {
    out += p.scheme;
    out += ':';
  }
  if (p.has_authority) {
    out += "//";
    out += p.authority;
  }
  out += p.path;
  if (p.has_query) {
    out += '?';
    out += p.query;
  }
  if (p.has_fragment) {
    out += '#';
    out += p.fragment;
  }
  return out;
}

}  // namespace

std::optional<IriViolation> validate_iri(std::string_view s) {
  if (s.empty()) return IriViolation{0, "empty"};
  std::vector<Cp> cps;
  cps.reserve(s.size());
  if (auto bad = decode_utf8(s, cps)) return IriViolation{*bad, "utf-8"};
  return IriScanner(cps, s.size()).run();
}

std::string resolve_iri(std::string_view base, std::string_view reference) {
  if (base.empty()) return std::string(reference);
  IriParts r = split_iri(reference);
  IriParts b = split_iri(base);
  IriParts t;
  if (r.has_scheme) {
    t = r;
    t.path = remove_dot_segments(t.path);
  } else {
    t.has_scheme = b.has_scheme;
    t.scheme = b.scheme;
    if (r.has_authority) {
      t.has_authority = true;
      t.authority = r.authority;
      t.path = remove_dot_segments(r.path);
      t.has_query = r.has_query;
      t.query = r.query;
    } else {
      t.has_authority = b.has_authority;
      t.authority = b.authority;
      if (r.path.empty()) {
        t.path = b.path;
        t.has_query = r.has_query ? true : b.has_query;
        t.query = r.has_query ? r.query : b.query;
      } else {
        t.path = r.path[0] == '/' ? remove_dot_segments(r.path)
                                  : remove_dot_segments(merge_paths(b, r.path));
        t.has_query = r.has_query;
        t.query = r.query;
      }
    }
    t.has_fragment = r.has_fragment;
    t.fragment = r.fragment;
    return recompose(t);
  }
  return recompose(t);
}

}  // namespace ontolint
