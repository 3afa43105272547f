#include <wssim/wsdl_model.hpp>

#include "xml_dom.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace wssim {

namespace {

constexpr std::string_view kWsdlNs = "http://schemas.xmlsoap.org/wsdl/";
constexpr std::string_view kSoapEncNs = "http://schemas.xmlsoap.org/soap/encoding/";
constexpr std::string_view kXsdNamespaces[] = {"http://www.w3.org/2001/XMLSchema", "http://www.w3.org/2000/10/XMLSchema",
                                               "http://www.w3.org/1999/XMLSchema"};

bool is_xsd_ns(std::string_view ns) {
  return std::find(std::begin(kXsdNamespaces), std::end(kXsdNamespaces), ns) != std::end(kXsdNamespaces);
}

bool is_xsd(const xml::Element& e, std::string_view local) { return is_xsd_ns(e.name.ns) && e.name.local == local; }

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw WsdlError(WsdlError::Kind::io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

/// Global schema components from every inline and imported schema.
class SchemaSet {
public:
  explicit SchemaSet(std::filesystem::path base_dir) : base_dir_(std::move(base_dir)) {}

  void add_schema(const xml::Element& schema, const std::filesystem::path& dir) {
    const std::string* tns = schema.attr("targetNamespace");
    const std::string ns = tns ? *tns : std::string();
    for (const auto& child : schema.children) {
      const auto& c = *child;
      if (!is_xsd_ns(c.name.ns)) continue;
      const std::string* name = c.attr("name");
      const std::string& kind = c.name.local;
      if ((kind == "import" || kind == "include") && !dir.empty()) {
        if (const std::string* loc = c.attr("schemaLocation")) load_external(*loc, dir);
        continue;
      }
      if (!name) continue;
      xml::QName q{ns, *name};
      if (kind == "element") elements_.emplace(q, &c);
      else if (kind == "complexType") complex_types_.emplace(q, &c);
      else if (kind == "simpleType") simple_types_.emplace(q, &c);
      else if (kind == "group") groups_.emplace(q, &c);
      else if (kind == "attributeGroup") attribute_groups_.emplace(q, &c);
      else if (kind == "attribute") attributes_.emplace(q, &c);
    }
  }

  const xml::Element* element(const xml::QName& q) const { return lookup(elements_, q); }
  const xml::Element* complex_type(const xml::QName& q) const { return lookup(complex_types_, q); }
  const xml::Element* simple_type(const xml::QName& q) const { return lookup(simple_types_, q); }
  const xml::Element* group(const xml::QName& q) const { return lookup(groups_, q); }
  const xml::Element* attribute_group(const xml::QName& q) const { return lookup(attribute_groups_, q); }
  const xml::Element* attribute(const xml::QName& q) const { return lookup(attributes_, q); }

private:
  using Table = std::map<xml::QName, const xml::Element*>;

  // Exact match first; otherwise a unique match on the local name tolerates
  // WSDLs whose prefixes point at the wrong namespace.
  static const xml::Element* lookup(const Table& t, const xml::QName& q) {
    if (auto it = t.find(q); it != t.end()) return it->second;
    const xml::Element* found = nullptr;
    for (const auto& [k, v] : t) {
      if (k.local != q.local) continue;
      if (found) return nullptr;
      found = v;
    }
    return found;
  }

  void load_external(const std::string& location, const std::filesystem::path& dir) {
    if (location.find("://") != std::string::npos) return; // local files only
    auto path = std::filesystem::weakly_canonical(dir / location);
    if (!loaded_.insert(path.string()).second) return;
    if (!std::filesystem::exists(path)) return;
    std::unique_ptr<xml::Element> doc;
    try {
      doc = xml::parse(read_text_file(path));
    } catch (const xml::ParseError& e) {
      throw WsdlError(WsdlError::Kind::malformed_xml, path.string() + ": " + e.what());
    }
    if (is_xsd(*doc, "schema")) add_schema(*doc, path.parent_path());
    external_.push_back(std::move(doc));
  }

  std::filesystem::path base_dir_;
  Table elements_, complex_types_, simple_types_, groups_, attribute_groups_, attributes_;
  std::set<std::string> loaded_;
  std::vector<std::unique_ptr<xml::Element>> external_;
};

[[noreturn]] void unresolvable(std::string_view what, const xml::QName& q) {
  throw WsdlError(WsdlError::Kind::unresolvable_type_ref, "unresolvable " + std::string(what) + " " + q.str(), q.str());
}

/// Expands XSD declarations into ParamNode trees.
class TreeBuilder {
public:
  TreeBuilder(const SchemaSet& schemas, std::size_t max_depth) : schemas_(schemas), max_depth_(max_depth) {}

  ParamNode element_node(const xml::Element& decl, std::size_t depth) {
    const xml::Element* el = &decl;
    if (const std::string* ref = decl.attr("ref")) {
      const auto q = decl.resolve(*ref);
      el = schemas_.element(q);
      if (!el) unresolvable("element", q);
    }
    const std::string* name = el->attr("name");
    ParamNode node{name ? *name : std::string(), {}};
    if (depth >= max_depth_) return node;
    if (const std::string* type = el->attr("type")) {
      expand_named_type(el->resolve(*type), depth, node.children);
    } else if (const xml::Element* inline_type = first_xsd_child(*el, "complexType")) {
      complex_content(*inline_type, depth + 1, node.children);
    }
    return node;
  }

  ParamNode typed_node(std::string name, const xml::QName& type, std::size_t depth) {
    ParamNode node{std::move(name), {}};
    if (depth < max_depth_) expand_named_type(type, depth, node.children);
    return node;
  }

private:
  static const xml::Element* first_xsd_child(const xml::Element& e, std::string_view local) {
    for (const auto& c : e.children) {
      if (is_xsd(*c, local)) return c.get();
    }
    return nullptr;
  }

  // Children contributed by a named type; simple and builtin types add none.
  void expand_named_type(const xml::QName& type, std::size_t depth, std::vector<ParamNode>& out) {
    if (is_xsd_ns(type.ns) || type.ns == kSoapEncNs) return;
    if (const xml::Element* ct = schemas_.complex_type(type)) {
      if (std::find(path_.begin(), path_.end(), ct) != path_.end()) return; // recursion: truncate
      path_.push_back(ct);
      complex_content(*ct, depth + 1, out);
      path_.pop_back();
      return;
    }
    if (schemas_.simple_type(type)) return;
    unresolvable("type", type);
  }

  void complex_content(const xml::Element& ct, std::size_t depth, std::vector<ParamNode>& out) {
    for (const auto& child : ct.children) particle(*child, depth, out);
  }

  void particle(const xml::Element& p, std::size_t depth, std::vector<ParamNode>& out) {
    if (!is_xsd_ns(p.name.ns)) return;
    const std::string& kind = p.name.local;
    if (kind == "sequence" || kind == "all" || kind == "choice") {
      complex_content(p, depth, out);
    } else if (kind == "element") {
      out.push_back(element_node(p, depth));
    } else if (kind == "attribute") {
      if (const std::string* use = p.attr("use"); use && *use == "prohibited") return;
      const xml::Element* decl = &p;
      if (const std::string* ref = p.attr("ref")) {
        const auto q = p.resolve(*ref);
        decl = schemas_.attribute(q);
        // soapenc/wsdl attributes (e.g. wsdl:arrayType) carry no parameter.
        if (!decl) {
          if (q.ns == kWsdlNs || q.ns == kSoapEncNs || is_xsd_ns(q.ns)) return;
          unresolvable("attribute", q);
        }
      }
      if (const std::string* name = decl->attr("name")) out.push_back(ParamNode{*name, {}});
    } else if (kind == "group" || kind == "attributeGroup") {
      const std::string* ref = p.attr("ref");
      if (!ref) {
        complex_content(p, depth, out);
        return;
      }
      const auto q = p.resolve(*ref);
      const xml::Element* def = kind == "group" ? schemas_.group(q) : schemas_.attribute_group(q);
      if (!def) unresolvable(kind, q);
      if (std::find(path_.begin(), path_.end(), def) != path_.end()) return;
      path_.push_back(def);
      complex_content(*def, depth, out);
      path_.pop_back();
    } else if (kind == "complexContent") {
      for (const auto& c : p.children) derivation(*c, depth, out);
    }
    // simpleContent, any, anyAttribute, annotation: no named parameters.
  }

  void derivation(const xml::Element& d, std::size_t depth, std::vector<ParamNode>& out) {
    if (!is_xsd(d, "extension") && !is_xsd(d, "restriction")) return;
    const std::string* base = d.attr("base");
    if (base) {
      const auto q = d.resolve(*base);
      if (q.ns == kSoapEncNs && q.local == "Array") {
        array_item_type(d, depth, out);
      } else if (is_xsd(d, "extension") && !is_xsd_ns(q.ns) && q.ns != kSoapEncNs) {
        const xml::Element* ct = schemas_.complex_type(q);
        if (!ct) unresolvable("type", q);
        if (std::find(path_.begin(), path_.end(), ct) == path_.end()) {
          path_.push_back(ct);
          complex_content(*ct, depth, out);
          path_.pop_back();
        }
      }
    }
    complex_content(d, depth, out);
  }

  // SOAP-encoded arrays: <attribute ref="soapenc:arrayType" wsdl:arrayType="tns:Book[]"/>.
  void array_item_type(const xml::Element& restriction, std::size_t depth, std::vector<ParamNode>& out) {
    for (const auto& c : restriction.children) {
      if (!is_xsd(*c, "attribute")) continue;
      auto it = c->attributes.find(xml::QName{std::string(kWsdlNs), "arrayType"});
      if (it == c->attributes.end()) continue;
      std::string item = it->second.substr(0, it->second.find('['));
      const auto q = c->resolve(item);
      if (is_xsd_ns(q.ns) || q.ns == kSoapEncNs) return;
      expand_named_type(q, depth - 1, out);
      return;
    }
  }

  const SchemaSet& schemas_;
  std::size_t max_depth_;
  std::vector<const xml::Element*> path_;
};

ParamNode message_tree(const std::map<xml::QName, const xml::Element*>& messages,
                       const xml::Element* io, const SchemaSet& schemas, std::size_t max_depth) {
  if (!io) return {};
  const std::string* msg_ref = io->attr("message");
  if (!msg_ref) return {};
  const auto q = io->resolve(*msg_ref);
  auto it = messages.find(q);
  if (it == messages.end()) {
    // Same local-name tolerance as for schema components.
    it = std::find_if(messages.begin(), messages.end(), [&](const auto& kv) { return kv.first.local == q.local; });
    if (it == messages.end()) unresolvable("message", q);
  }
  const xml::Element& message = *it->second;
  const auto parts = message.children_named(kWsdlNs, "part");
  TreeBuilder builder(schemas, max_depth);

  auto part_node = [&](const xml::Element& part, std::size_t depth) -> ParamNode {
    const std::string* name = part.attr("name");
    if (const std::string* element = part.attr("element")) {
      const auto eq = part.resolve(*element);
      const xml::Element* decl = schemas.element(eq);
      if (!decl) unresolvable("element", eq);
      return builder.element_node(*decl, depth);
    }
    if (const std::string* type = part.attr("type")) return builder.typed_node(name ? *name : "", part.resolve(*type), depth);
    return ParamNode{name ? *name : std::string(), {}};
  };

  // Document/literal wrapper: the single element part becomes the root.
  if (parts.size() == 1 && parts.front()->attr("element")) {
    ParamNode wrapper = part_node(*parts.front(), 0);
    if (!wrapper.children.empty()) return wrapper;
  }
  ParamNode root{message.attr("name") ? *message.attr("name") : std::string(), {}};
  for (const xml::Element* part : parts) root.children.push_back(part_node(*part, 1));
  return root;
}

void flatten_into(const ParamNode& node, Sentence& prefix, const Tokenizer& tokenizer, FlattenedParamSet& out) {
  const std::size_t mark = prefix.size();
  for (auto& t : tokenizer(node.name)) prefix.push_back(std::move(t));
  if (node.children.empty()) {
    if (!prefix.empty()) out.sentences.push_back(prefix);
  } else {
    for (const auto& c : node.children) flatten_into(c, prefix, tokenizer, out);
  }
  prefix.resize(mark);
}

} // namespace

ServiceDescription parse_wsdl(std::string_view document, const ParseOptions& options, std::string source_uri) {
  std::unique_ptr<xml::Element> doc;
  try {
    doc = xml::parse(document);
  } catch (const xml::ParseError& e) {
    throw WsdlError(WsdlError::Kind::malformed_xml, "malformed XML: " + std::string(e.what()));
  }
  if (doc->name.ns != kWsdlNs || doc->name.local != "definitions")
    throw WsdlError(WsdlError::Kind::not_wsdl, "root element is " + doc->name.str() + ", expected wsdl:definitions");

  const std::string* tns_attr = doc->attr("targetNamespace");
  const std::string tns = tns_attr ? *tns_attr : std::string();

  SchemaSet schemas(options.base_dir);
  for (const xml::Element* types : doc->children_named(kWsdlNs, "types")) {
    for (const auto& schema : types->children) {
      if (is_xsd(*schema, "schema")) schemas.add_schema(*schema, options.base_dir);
    }
  }

  std::map<xml::QName, const xml::Element*> messages;
  for (const xml::Element* m : doc->children_named(kWsdlNs, "message")) {
    if (const std::string* name = m->attr("name")) messages.emplace(xml::QName{tns, *name}, m);
  }

  ServiceDescription service;
  service.source_uri = std::move(source_uri);
  if (const std::string* name = doc->attr("name")) {
    service.name = *name;
  } else if (const xml::Element* svc = doc->first_child(kWsdlNs, "service"); svc && svc->attr("name")) {
    service.name = *svc->attr("name");
  } else if (!service.source_uri.empty()) {
    service.name = std::filesystem::path(service.source_uri).stem().string();
  }

  for (const xml::Element* port_type : doc->children_named(kWsdlNs, "portType")) {
    for (const xml::Element* op : port_type->children_named(kWsdlNs, "operation")) {
      OperationDef def;
      if (const std::string* name = op->attr("name")) def.name = *name;
      def.input = message_tree(messages, op->first_child(kWsdlNs, "input"), schemas, options.max_depth);
      def.output = message_tree(messages, op->first_child(kWsdlNs, "output"), schemas, options.max_depth);
      service.operations.push_back(std::move(def));
    }
  }
  if (service.operations.empty())
    throw WsdlError(WsdlError::Kind::no_operations, "WSDL declares no portType operations");
  return service;
}

ServiceDescription parse_wsdl_file(const std::filesystem::path& file, ParseOptions options) {
  const std::string text = read_text_file(file);
  if (options.base_dir.empty()) options.base_dir = file.parent_path().empty() ? "." : file.parent_path();
  return parse_wsdl(text, options, file.string());
}

FlattenedParamSet flatten(const ParamNode& tree, const Tokenizer& tokenizer) {
  FlattenedParamSet out;
  Sentence prefix;
  for (const auto& child : tree.children) flatten_into(child, prefix, tokenizer, out);
  return out;
}

std::size_t leaf_count(const ParamNode& tree) {
  std::size_t n = 0;
  for (const auto& c : tree.children) n += c.children.empty() ? 1 : leaf_count(c);
  return n;
}

std::size_t tree_depth(const ParamNode& tree) {
  std::size_t d = 0;
  for (const auto& c : tree.children) d = std::max(d, 1 + tree_depth(c));
  return d;
}

} // namespace wssim
