#pragma once

// Minimal namespace-aware DOM built on expat. Internal to wssim_core.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wssim::xml {

struct QName {
  std::string ns;
  std::string local;

  friend bool operator==(const QName&, const QName&) = default;
  friend auto operator<=>(const QName&, const QName&) = default;

  std::string str() const { return ns.empty() ? local : "{" + ns + "}" + local; }
};

class Element {
public:
  QName name;
  std::map<QName, std::string> attributes;
  std::vector<std::unique_ptr<Element>> children;
  /// Prefix -> namespace bindings in scope at this element ("" = default).
  std::shared_ptr<const std::map<std::string, std::string>> scope;

  const std::string* attr(std::string_view local) const;
  std::vector<const Element*> children_named(std::string_view ns, std::string_view local) const;
  const Element* first_child(std::string_view ns, std::string_view local) const;

  /// Resolves a "prefix:local" attribute value against the in-scope
  /// namespace bindings. Unknown prefixes resolve to the empty namespace.
  QName resolve(std::string_view prefixed) const;
};

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses a complete document. Throws ParseError on malformed input.
std::unique_ptr<Element> parse(std::string_view document);

} // namespace wssim::xml
