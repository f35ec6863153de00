#include "ontolint/shacl.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace ontolint {
namespace {

const std::string sh = std::string(vocab::sh_ns);

const std::string sh_target_class = sh + "targetClass";
const std::string sh_target_node = sh + "targetNode";
const std::string sh_target_subjects_of = sh + "targetSubjectsOf";
const std::string sh_target_objects_of = sh + "targetObjectsOf";
const std::string sh_property = sh + "property";
const std::string sh_path = sh + "path";
const std::string sh_inverse_path = sh + "inversePath";
const std::string sh_min_count = sh + "minCount";
const std::string sh_max_count = sh + "maxCount";
const std::string sh_class = sh + "class";
const std::string sh_datatype = sh + "datatype";
const std::string sh_node_kind = sh + "nodeKind";
const std::string sh_pattern = sh + "pattern";
const std::string sh_in = sh + "in";
const std::string sh_has_value = sh + "hasValue";
const std::string sh_message = sh + "message";
const std::string sh_severity = sh + "severity";
const std::string sh_violation = sh + "Violation";
const std::string sh_warning = sh + "Warning";
const std::string sh_info = sh + "Info";
const std::string sh_iri_kind = sh + "IRI";
const std::string sh_literal_kind = sh + "Literal";
const std::string sh_blank_kind = sh + "BlankNode";

// Property-shape parameters this engine evaluates; anything else in the
// sh: namespace is reported as unsupported.
const std::set<std::string> supported_property_params = {
    sh_path,    sh_min_count, sh_max_count, sh_class,    sh_datatype,
    sh_node_kind, sh_pattern, sh_in,        sh_has_value, sh_message,
    sh_severity};

const std::set<std::string> supported_node_params = {
    sh_target_class, sh_target_node, sh_target_subjects_of, sh_target_objects_of,
    sh_property,     sh_message,     sh_severity};

std::string term_text(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Iri: return "<" + t.value + ">";
    case Term::Kind::Blank: return "_:" + t.value;
    default: return "\"" + t.value + "\"";
  }
}

}  // namespace

std::string_view to_string(ShapeConstraint::Kind k) {
  switch (k) {
    case ShapeConstraint::Kind::MinCount: return "minCount";
    case ShapeConstraint::Kind::MaxCount: return "maxCount";
    case ShapeConstraint::Kind::Class: return "class";
    case ShapeConstraint::Kind::Datatype: return "datatype";
    case ShapeConstraint::Kind::NodeKind: return "nodeKind";
    case ShapeConstraint::Kind::Pattern: return "pattern";
    case ShapeConstraint::Kind::In: return "in";
    case ShapeConstraint::Kind::HasValue: return "hasValue";
  }
  return "constraint";
}

std::vector<Term> read_rdf_list(const Graph& g, const Term& head) {
  std::vector<Term> out;
  Term cur = head;
  std::set<Term> seen;
  while (!(cur.is_iri() && cur.value == vocab::rdf_nil)) {
    if (seen.count(cur)) return {};  // cyclic, not a list
    seen.insert(cur);
    auto firsts = g.objects_of(cur, vocab::rdf_first);
    auto rests = g.objects_of(cur, vocab::rdf_rest);
    if (firsts.size() != 1 || rests.size() != 1) return {};
    out.push_back(firsts[0]);
    cur = rests[0];
  }
  return out;
}

std::variant<ShapeLoad, std::string> load_shapes(const Graph& g) {
  ShapeLoad load;

  // Candidate node shapes: anything with a target declaration.
  std::set<Term> shape_nodes;
  for (const Triple& t : g.triples()) {
    const std::string& p = t.predicate.value;
    if (p == sh_target_class || p == sh_target_node || p == sh_target_subjects_of ||
        p == sh_target_objects_of)
      shape_nodes.insert(t.subject);
  }

  for (const Term& node : shape_nodes) {
    std::vector<ShapeTarget> targets;
    for (const Term& t : g.objects_of(node, sh_target_class))
      targets.push_back({ShapeTarget::Kind::Class, t});
    for (const Term& t : g.objects_of(node, sh_target_node))
      targets.push_back({ShapeTarget::Kind::Node, t});
    for (const Term& t : g.objects_of(node, sh_target_subjects_of))
      targets.push_back({ShapeTarget::Kind::SubjectsOf, t});
    for (const Term& t : g.objects_of(node, sh_target_objects_of))
      targets.push_back({ShapeTarget::Kind::ObjectsOf, t});

    ShapeSeverity node_severity = ShapeSeverity::Violation;
    for (const Term& s : g.objects_of(node, sh_severity)) {
      if (s.value == sh_warning) node_severity = ShapeSeverity::Warning;
      if (s.value == sh_info) node_severity = ShapeSeverity::Info;
    }
    std::string node_message;
    for (const Term& m : g.objects_of(node, sh_message))
      if (m.is_literal()) node_message = m.value;

    // Unsupported parameters directly on the node shape.
    for (const Triple& t : g.match(&node, nullptr, nullptr)) {
      const std::string& p = t.predicate.value;
      if (p.rfind(sh, 0) == 0 && !supported_node_params.count(p))
        load.unsupported.push_back("shape " + term_text(node) + " uses unsupported feature <" +
                                   p + ">");
    }

    for (const Term& pshape : g.objects_of(node, sh_property)) {
      Shape shape;
      shape.id = node;
      shape.targets = targets;
      shape.severity = node_severity;
      shape.message = node_message;

      auto paths = g.objects_of(pshape, sh_path);
      if (paths.size() != 1)
        return std::string("property shape of " + term_text(node) +
                           " needs exactly one sh:path");
      const Term& path = paths[0];
      if (path.is_iri()) {
        shape.path = {path.value, false};
      } else if (path.is_blank()) {
        auto inv = g.objects_of(path, sh_inverse_path);
        if (inv.size() == 1 && inv[0].is_iri()) {
          shape.path = {inv[0].value, true};
        } else {
          load.unsupported.push_back("shape " + term_text(node) +
                                     " uses an unsupported sh:path expression");
          continue;
        }
      } else {
        return std::string("sh:path of " + term_text(node) + " must be an IRI");
      }

      for (const Triple& t : g.match(&pshape, nullptr, nullptr)) {
        const std::string& p = t.predicate.value;
        if (p.rfind(sh, 0) == 0 && !supported_property_params.count(p)) {
          load.unsupported.push_back("shape " + term_text(node) +
                                     " uses unsupported feature <" + p + ">");
          continue;
        }
        const Term& o = t.object;
        if (p == sh_min_count || p == sh_max_count) {
          if (!o.is_literal()) return std::string("count constraint needs an integer literal");
          long long n;
          try {
            n = std::stoll(o.value);
          } catch (...) {
            return std::string("count constraint value '" + o.value + "' is not an integer");
          }
          if (n < 0) return std::string("count constraint must be non-negative");
          ShapeConstraint c;
          c.kind = p == sh_min_count ? ShapeConstraint::Kind::MinCount
                                     : ShapeConstraint::Kind::MaxCount;
          c.count = n;
          shape.constraints.push_back(c);
        } else if (p == sh_class || p == sh_datatype) {
          if (!o.is_iri()) return std::string("class/datatype constraint needs an IRI");
          ShapeConstraint c;
          c.kind = p == sh_class ? ShapeConstraint::Kind::Class : ShapeConstraint::Kind::Datatype;
          c.term = o;
          shape.constraints.push_back(c);
        } else if (p == sh_node_kind) {
          ShapeConstraint c;
          c.kind = ShapeConstraint::Kind::NodeKind;
          if (o.value == sh_iri_kind)
            c.node_kind = Term::Kind::Iri;
          else if (o.value == sh_literal_kind)
            c.node_kind = Term::Kind::Literal;
          else if (o.value == sh_blank_kind)
            c.node_kind = Term::Kind::Blank;
          else {
            load.unsupported.push_back("shape " + term_text(node) +
                                       " uses an unsupported sh:nodeKind value");
            continue;
          }
          shape.constraints.push_back(c);
        } else if (p == sh_pattern) {
          if (!o.is_literal()) return std::string("sh:pattern needs a string literal");
          try {
            std::regex probe(o.value, std::regex::ECMAScript);
          } catch (const std::regex_error&) {
            return std::string("sh:pattern '" + o.value + "' is not a valid regex");
          }
          ShapeConstraint c;
          c.kind = ShapeConstraint::Kind::Pattern;
          c.pattern = o.value;
          shape.constraints.push_back(c);
        } else if (p == sh_in) {
          auto values = read_rdf_list(g, o);
          if (values.empty()) return std::string("sh:in needs a non-empty RDF list");
          ShapeConstraint c;
          c.kind = ShapeConstraint::Kind::In;
          c.in_values = std::move(values);
          shape.constraints.push_back(c);
        } else if (p == sh_has_value) {
          ShapeConstraint c;
          c.kind = ShapeConstraint::Kind::HasValue;
          c.term = o;
          shape.constraints.push_back(c);
        } else if (p == sh_message) {
          if (o.is_literal()) shape.message = o.value;
        } else if (p == sh_severity) {
          if (o.value == sh_violation) shape.severity = ShapeSeverity::Violation;
          if (o.value == sh_warning) shape.severity = ShapeSeverity::Warning;
          if (o.value == sh_info) shape.severity = ShapeSeverity::Info;
        }
      }

      if (shape.constraints.empty()) continue;  // nothing checkable
      shape.message = shape.message.empty()
                          ? "shape " + term_text(node) + " constraint on <" +
                                shape.path.predicate + ">"
                          : shape.message;
      load.shapes.push_back(std::move(shape));
    }
  }
  return load;
}

namespace {

std::vector<Term> focus_nodes(const Graph& data, const Shape& shape) {
  std::set<Term> focus;
  for (const ShapeTarget& t : shape.targets) {
    switch (t.kind) {
      case ShapeTarget::Kind::Class: {
        Term type = Term::iri(vocab::rdf_type);
        for (const Triple& m : data.match(nullptr, &type, &t.term)) focus.insert(m.subject);
        break;
      }
      case ShapeTarget::Kind::Node:
        focus.insert(t.term);
        break;
      case ShapeTarget::Kind::SubjectsOf: {
        Term p = Term::iri(t.term.value);
        for (const Triple& m : data.match(nullptr, &p, nullptr)) focus.insert(m.subject);
        break;
      }
      case ShapeTarget::Kind::ObjectsOf: {
        Term p = Term::iri(t.term.value);
        for (const Triple& m : data.match(nullptr, &p, nullptr)) focus.insert(m.object);
        break;
      }
    }
  }
  return {focus.begin(), focus.end()};
}

std::vector<Term> value_nodes(const Graph& data, const Term& focus, const ShapePath& path) {
  std::set<Term> values;
  Term p = Term::iri(path.predicate);
  if (!path.inverse) {
    if (!focus.is_literal())
      for (const Triple& m : data.match(&focus, &p, nullptr)) values.insert(m.object);
  } else {
    for (const Triple& m : data.match(nullptr, &p, &focus)) values.insert(m.subject);
  }
  return {values.begin(), values.end()};
}

}  // namespace

std::vector<ShapeViolation> validate(const Graph& data, const std::vector<Shape>& shapes) {
  std::vector<ShapeViolation> out;
  for (const Shape& shape : shapes) {
    for (const Term& focus : focus_nodes(data, shape)) {
      std::vector<Term> values = value_nodes(data, focus, shape.path);
      for (const ShapeConstraint& c : shape.constraints) {
        auto violation = [&](std::optional<Term> value, std::string detail) {
          out.push_back({shape.id, focus, std::move(value),
                         std::string(to_string(c.kind)), shape.message + " (" + detail + ")",
                         shape.severity});
        };
        switch (c.kind) {
          case ShapeConstraint::Kind::MinCount:
            if (static_cast<long long>(values.size()) < c.count)
              violation(std::nullopt, "expected at least " + std::to_string(c.count) +
                                          " values, found " + std::to_string(values.size()));
            break;
          case ShapeConstraint::Kind::MaxCount:
            if (static_cast<long long>(values.size()) > c.count)
              violation(values.empty() ? std::optional<Term>{} : std::optional<Term>{values[0]},
                        "expected at most " + std::to_string(c.count) + " values, found " +
                            std::to_string(values.size()));
            break;
          case ShapeConstraint::Kind::Class: {
            for (const Term& v : values) {
              if (v.is_literal() || !data.has(v, vocab::rdf_type, c.term))
                violation(v, "value is not an instance of <" + c.term.value + ">");
            }
            break;
          }
          case ShapeConstraint::Kind::Datatype:
            for (const Term& v : values)
              if (!v.is_literal() || v.datatype != c.term.value)
                violation(v, "value does not have datatype <" + c.term.value + ">");
            break;
          case ShapeConstraint::Kind::NodeKind:
            for (const Term& v : values)
              if (v.kind != c.node_kind) violation(v, "wrong node kind");
            break;
          case ShapeConstraint::Kind::Pattern: {
            std::regex re(c.pattern, std::regex::ECMAScript);
            for (const Term& v : values) {
              if (v.is_blank()) {
                violation(v, "blank node cannot match a pattern");
                continue;
              }
              if (!std::regex_search(v.value, re))
                violation(v, "value does not match pattern '" + c.pattern + "'");
            }
            break;
          }
          case ShapeConstraint::Kind::In:
            for (const Term& v : values)
              if (std::find(c.in_values.begin(), c.in_values.end(), v) == c.in_values.end())
                violation(v, "value is not in the allowed list");
            break;
          case ShapeConstraint::Kind::HasValue:
            if (std::find(values.begin(), values.end(), c.term) == values.end())
              violation(std::nullopt, "required value " + term_text(c.term) + " is missing");
            break;
        }
      }
    }
  }
  return out;
}

}  // namespace ontolint
