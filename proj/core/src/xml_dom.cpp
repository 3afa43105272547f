#include "xml_dom.hpp"

#include <expat.h>

namespace wssim::xml {

namespace {

constexpr char kNsSep = '\x1f';

QName split_expat_name(const char* raw) {
  std::string_view s(raw);
  const auto sep = s.find(kNsSep);
  if (sep == std::string_view::npos) return {"", std::string(s)};
  return {std::string(s.substr(0, sep)), std::string(s.substr(sep + 1))};
}

struct Builder {
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;
  std::shared_ptr<const std::map<std::string, std::string>> scope =
      std::make_shared<const std::map<std::string, std::string>>();
  std::vector<std::shared_ptr<const std::map<std::string, std::string>>> scope_stack;
  std::map<std::string, std::string> pending;
  bool has_pending = false;

  static void XMLCALL on_ns_start(void* ud, const XML_Char* prefix, const XML_Char* uri) {
    auto* b = static_cast<Builder*>(ud);
    b->pending[prefix ? prefix : ""] = uri ? uri : "";
    b->has_pending = true;
  }

  static void XMLCALL on_start(void* ud, const XML_Char* name, const XML_Char** atts) {
    auto* b = static_cast<Builder*>(ud);
    b->scope_stack.push_back(b->scope);
    if (b->has_pending) {
      auto merged = *b->scope;
      for (auto& [k, v] : b->pending) merged[k] = v;
      b->scope = std::make_shared<const std::map<std::string, std::string>>(std::move(merged));
      b->pending.clear();
      b->has_pending = false;
    }
    auto el = std::make_unique<Element>();
    el->name = split_expat_name(name);
    el->scope = b->scope;
    for (const XML_Char** a = atts; *a; a += 2) el->attributes.emplace(split_expat_name(a[0]), a[1]);
    Element* raw = el.get();
    if (b->stack.empty()) {
      b->root = std::move(el);
    } else {
      b->stack.back()->children.push_back(std::move(el));
    }
    b->stack.push_back(raw);
  }

  static void XMLCALL on_end(void* ud, const XML_Char*) {
    auto* b = static_cast<Builder*>(ud);
    b->stack.pop_back();
    b->scope = b->scope_stack.back();
    b->scope_stack.pop_back();
  }
};

} // namespace

const std::string* Element::attr(std::string_view local) const {
  auto it = attributes.find(QName{"", std::string(local)});
  return it == attributes.end() ? nullptr : &it->second;
}

std::vector<const Element*> Element::children_named(std::string_view ns, std::string_view local) const {
  std::vector<const Element*> out;
  for (const auto& c : children) {
    if (c->name.ns == ns && c->name.local == local) out.push_back(c.get());
  }
  return out;
}

const Element* Element::first_child(std::string_view ns, std::string_view local) const {
  for (const auto& c : children) {
    if (c->name.ns == ns && c->name.local == local) return c.get();
  }
  return nullptr;
}

QName Element::resolve(std::string_view prefixed) const {
  const auto colon = prefixed.find(':');
  const std::string prefix = colon == std::string_view::npos ? "" : std::string(prefixed.substr(0, colon));
  const std::string local(colon == std::string_view::npos ? prefixed : prefixed.substr(colon + 1));
  if (scope) {
    if (auto it = scope->find(prefix); it != scope->end()) return {it->second, local};
  }
  return {"", local};
}

std::unique_ptr<Element> parse(std::string_view document) {
  XML_Parser parser = XML_ParserCreateNS(nullptr, kNsSep);
  if (!parser) throw ParseError("cannot create XML parser");
  Builder builder;
  XML_SetUserData(parser, &builder);
  XML_SetElementHandler(parser, &Builder::on_start, &Builder::on_end);
  XML_SetStartNamespaceDeclHandler(parser, &Builder::on_ns_start);
  const auto status = XML_Parse(parser, document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    std::string msg = std::string(XML_ErrorString(XML_GetErrorCode(parser))) + " at line " +
                      std::to_string(XML_GetCurrentLineNumber(parser)) + ", column " +
                      std::to_string(XML_GetCurrentColumnNumber(parser));
    XML_ParserFree(parser);
    throw ParseError(msg);
  }
  XML_ParserFree(parser);
  if (!builder.root) throw ParseError("document has no root element");
  return std::move(builder.root);
}

} // namespace wssim::xml
