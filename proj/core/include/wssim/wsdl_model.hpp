#pragma once

#include <wssim/text.hpp>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wssim {

/// One node of an operation's parameter tree. Internal nodes come from
/// complex types, leaves from simple types; a node is simple exactly when
/// it has no children.
struct ParamNode {
  std::string name;
  std::vector<ParamNode> children;

  enum class Kind { simple, complex };
  Kind kind() const { return children.empty() ? Kind::simple : Kind::complex; }
  bool empty() const { return children.empty(); }

  friend bool operator==(const ParamNode&, const ParamNode&) = default;
};

struct OperationDef {
  std::string name;
  ParamNode input;   ///< root is the message (or its single wrapper element)
  ParamNode output;

  friend bool operator==(const OperationDef&, const OperationDef&) = default;
};

/// A WSDL reduced to its portType operations. Never empty once parsed;
/// operation names may repeat (e.g. the same operation on several portTypes).
struct ServiceDescription {
  std::string name;
  std::vector<OperationDef> operations;
  std::string source_uri;

  friend bool operator==(const ServiceDescription& a, const ServiceDescription& b) {
    return a.name == b.name && a.operations == b.operations;
  }
};

using Sentence = TokenList;

struct FlattenedParamSet {
  std::vector<Sentence> sentences;

  bool empty() const { return sentences.empty(); }
  std::size_t size() const { return sentences.size(); }
  friend bool operator==(const FlattenedParamSet&, const FlattenedParamSet&) = default;
};

class WsdlError : public std::runtime_error {
public:
  enum class Kind { io, malformed_xml, not_wsdl, no_operations, unresolvable_type_ref };

  WsdlError(Kind kind, const std::string& what, std::string qname = {})
      : std::runtime_error(what), kind_(kind), qname_(std::move(qname)) {}

  Kind kind() const noexcept { return kind_; }
  /// Offending "{namespace}local" name for unresolvable_type_ref.
  const std::string& qname() const noexcept { return qname_; }

private:
  Kind kind_;
  std::string qname_;
};

struct ParseOptions {
  std::size_t max_depth = 16;
  /// Directory used to resolve relative xsd:import/xsd:include locations.
  /// Empty disables external schema loading.
  std::filesystem::path base_dir;
};

/// Parses a WSDL 1.1 document. Only types, messages and portTypes are read;
/// bindings, ports and service addresses never influence the result.
ServiceDescription parse_wsdl(std::string_view document, const ParseOptions& options = {},
                              std::string source_uri = {});

/// Reads and parses a file; relative schema imports resolve next to it.
ServiceDescription parse_wsdl_file(const std::filesystem::path& file, ParseOptions options = {});

using Tokenizer = std::function<TokenList(std::string_view)>;

/// One sentence per leaf: the tokens of every node below the root on the
/// path to the leaf, then the leaf's own tokens. The root name is dropped.
FlattenedParamSet flatten(const ParamNode& tree, const Tokenizer& tokenizer = tokenize_identifier);

std::size_t leaf_count(const ParamNode& tree);
std::size_t tree_depth(const ParamNode& tree);

} // namespace wssim
