// Copyright 2026 The apievo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the package wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apievo/adl.hpp"
#include "apievo/codec.hpp"
#include "apievo/convert.hpp"
#include "apievo/error.hpp"
#include "apievo/internal_rep.hpp"
#include "apievo/registry.hpp"
#include "apievo/resolution.hpp"
#include "apievo/revision.hpp"
#include "apievo/schema.hpp"
#include "apievo/value.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace apievo {
namespace {

json DiagnosticJson(const Diagnostic& d) {
  return {{"severity", d.severity == Severity::kError ? "error" : "warning"},
          {"code", ErrorCodeName(d.code)},
          {"path", d.path},
          {"message", d.message}};
}

json DiagnosticsJson(const std::vector<Diagnostic>& list) {
  json out = json::array();
  for (const auto& d : list) out.push_back(DiagnosticJson(d));
  return out;
}

Direction ParseDirection(const std::string& text) {
  if (text == "req" || text == "request") return Direction::kRequest;
  if (text == "resp" || text == "response") return Direction::kResponse;
  throw py::value_error("direction must be 'req' or 'resp', not '" + text + "'");
}

RevisionHistory HistoryOf(const std::vector<std::string>& revisions) {
  if (revisions.empty()) throw py::value_error("at least one revision is required");
  ApiDefinition first = ParseDefinition(revisions.front());
  RevisionHistory history(first.name);
  history = history.Append(std::move(first));
  for (std::size_t i = 1; i < revisions.size(); ++i) {
    history = history.Append(ParseDefinition(revisions[i]));
  }
  return history;
}

std::vector<int> SupportedOr(const RevisionHistory& h, const std::optional<std::vector<int>>& ids) {
  if (ids) return *ids;
  std::vector<int> all;
  for (int r = 1; r <= h.head(); ++r) all.push_back(r);
  return all;
}

Schema SchemaOf(const std::string& text) {
  return DeriveSchema(FlatModel(std::make_shared<const ApiDefinition>(ParseDefinition(text))));
}

py::bytes ToPyBytes(const Bytes& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

Bytes FromPyBytes(const py::bytes& b) {
  const std::string s = b;
  return Bytes(s.begin(), s.end());
}

std::string Validate(const std::string& text) {
  std::vector<Diagnostic> diagnostics;
  try {
    diagnostics = ValidateWellformedness(ParseSyntax(text));
  } catch (const Error& e) {
    diagnostics = e.diagnostics();
  }
  return DiagnosticsJson(diagnostics).dump();
}

std::string DiffJson(const std::vector<std::string>& revisions, int from, int to) {
  const ChangeSet set = Diff(HistoryOf(revisions), from, to);
  json changes = json::array();
  for (const auto& c : set.changes) {
    changes.push_back({{"kind", ChangeKindName(c.kind)},
                       {"element", ElementKindName(c.element)},
                       {"before", c.before},
                       {"after", c.after},
                       {"detail", c.detail}});
  }
  return json{{"from", set.from}, {"to", set.to}, {"changes", changes}, {"text", set.ToText()}}
      .dump();
}

std::string InternalText(const std::vector<std::string>& revisions,
                         const std::optional<std::vector<int>>& supported) {
  const RevisionHistory h = HistoryOf(revisions);
  return DeriveInternal(h, SupportedOr(h, supported)).ToText();
}

std::string ResolveText(const std::vector<std::string>& revisions, const std::string& client,
                        int revision, const std::optional<std::vector<int>>& supported) {
  const RevisionHistory h = HistoryOf(revisions);
  auto internal = std::make_shared<const InternalRepresentation>(
      DeriveInternal(h, SupportedOr(h, supported)));
  return Resolve(ParseClientDefinition(client), revision, h, internal).ToText();
}

py::bytes Convert(const std::vector<std::string>& revisions, const std::string& client,
                  int revision, const std::string& type, const std::string& direction,
                  const py::bytes& payload, const std::optional<std::vector<int>>& supported,
                  const std::map<std::string, std::string>& fallbacks) {
  const RevisionHistory h = HistoryOf(revisions);
  auto internal = std::make_shared<const InternalRepresentation>(
      DeriveInternal(h, SupportedOr(h, supported)));
  const ResolutionMap map = Resolve(ParseClientDefinition(client), revision, h, internal);
  const RecordMatch* match = map.ForClient(type);
  if (match == nullptr) {
    throw Error(ErrorCode::kUnknownElement, type, "client definition has no record '" + type + "'");
  }
  const Direction dir = ParseDirection(direction);
  const Schema& cs = map.client_schema;
  const Schema& is = internal->schema();
  const TypeShape cshape = cs.ShapeOf(type);
  const TypeShape ishape = is.ShapeOf(match->internal_type);
  const Bytes in = FromPyBytes(payload);
  if (dir == Direction::kRequest) {
    return ToPyBytes(Encode(ToInternal(Decode(in, cs, cshape, dir), map, dir), is, ishape, dir));
  }
  ConvertOptions options;
  options.enum_fallbacks = fallbacks;
  return ToPyBytes(
      Encode(ToClient(Decode(in, is, ishape, dir), map, dir, options), cs, cshape, dir));
}

py::bytes EncodeValue(const std::string& definition, const std::string& type,
                      const std::string& value_json, const std::string& direction) {
  const Schema s = SchemaOf(definition);
  const TypeShape shape = s.ShapeOf(type);
  const Value v = ValueFromJson(json::parse(value_json), s, shape);
  return ToPyBytes(Encode(v, s, shape, ParseDirection(direction)));
}

std::string DecodeValue(const std::string& definition, const std::string& type,
                        const py::bytes& payload, const std::string& direction) {
  const Schema s = SchemaOf(definition);
  return ValueToJson(Decode(FromPyBytes(payload), s, s.ShapeOf(type), ParseDirection(direction)))
      .dump();
}

std::string StatusJson(const ApiStatus& s) {
  json clients = json::array();
  for (const auto& c : s.clients) {
    clients.push_back({{"name", c.name},
                       {"revision", c.revision},
                       {"digest", c.digest},
                       {"orphaned", c.orphaned}});
  }
  return json{{"api", s.api}, {"head", s.head}, {"supported", s.supported}, {"clients", clients}}
      .dump();
}

}  // namespace
}  // namespace apievo

PYBIND11_MODULE(_apievo, m) {
  using namespace apievo;
  m.doc() = "Native core of the apievo package";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::module_::import("apievo.errors").attr("ApiEvoError");
      py::object exc = cls(e.what(), std::string(ErrorCodeName(e.code())), e.path(),
                           DiagnosticsJson(e.diagnostics()).dump());
      PyErr_SetObject(cls.ptr(), exc.ptr());
    } catch (const json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("validate", &Validate, py::arg("text"));
  m.def("canonical_text", [](const std::string& text) {
    return PrintDefinition(ParseDefinition(text));
  }, py::arg("text"));
  m.def("diff", &DiffJson, py::arg("revisions"), py::arg("from_revision"), py::arg("to_revision"));
  m.def("internal_rep", &InternalText, py::arg("revisions"), py::arg("supported") = py::none());
  m.def("resolve", &ResolveText, py::arg("revisions"), py::arg("client"), py::arg("revision"),
        py::arg("supported") = py::none());
  m.def("convert", &Convert, py::arg("revisions"), py::arg("client"), py::arg("revision"),
        py::arg("type"), py::arg("direction"), py::arg("payload"),
        py::arg("supported") = py::none(),
        py::arg("fallbacks") = std::map<std::string, std::string>{});
  m.def("encode", &EncodeValue, py::arg("definition"), py::arg("type"), py::arg("value"),
        py::arg("direction"));
  m.def("decode", &DecodeValue, py::arg("definition"), py::arg("type"), py::arg("payload"),
        py::arg("direction"));
  m.def("sha256_hex", [](const std::string& data) { return Sha256Hex(data); });

  py::class_<Registry>(m, "Registry")
      .def(py::init([](const std::string& root) { return Registry(root); }), py::arg("root"))
      .def("publish",
           [](Registry& r, const std::string& api, const std::string& text) {
             const PublishResult res = r.Publish(api, text);
             return json{{"revision", res.revision},
                         {"supported", res.supported},
                         {"warnings", DiagnosticsJson(res.warnings)}}
                 .dump();
           })
      .def("register_client",
           [](Registry& r, const std::string& api, const std::string& name,
              const std::string& text, int revision) {
             r.RegisterClient(api, name, text, revision);
           })
      .def("set_supported",
           [](Registry& r, const std::string& api, std::vector<int> ids, bool force) {
             const SupportReport rep = r.SetSupported(api, std::move(ids), force);
             return json{{"previous", rep.previous},
                         {"current", rep.current},
                         {"changed", rep.changed},
                         {"orphaned_clients", rep.orphaned_clients}}
                 .dump();
           })
      .def("status", [](const Registry& r, const std::string& api) { return StatusJson(r.Status(api)); })
      .def("apis", &Registry::Apis)
      .def("internal_rep",
           [](const Registry& r, const std::string& api) { return r.LoadInternal(api).ToText(); });
}
