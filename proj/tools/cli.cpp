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


#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
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
#include "embedded_corpus.hpp"

namespace apievo::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised inside `convert` when resolving the client fails.
struct ResolutionFailure {
  Error error;
};

struct Options {
  std::string store;
  bool json = false;
  bool force = false;
  bool from_json = false;
  std::string api;
  std::string file;
  std::string client_file;
  std::string client_name;
  std::string type;
  std::string direction = "req";
  std::string in;
  std::string out;
  std::string supported;
  std::string ids;
  std::vector<std::string> fallbacks;
  int from = 0;
  int to = 0;
  int revision = 0;
  int iterations = 20000;
};

std::vector<int> ParseIds(const std::string& text) {
  std::vector<int> ids;
  std::stringstream in(text);
  std::string part;
  try {
    while (std::getline(in, part, ',')) {
      if (part.empty()) continue;
      const auto dash = part.find('-');
      if (dash == std::string::npos) {
        ids.push_back(std::stoi(part));
      } else {
        const int lo = std::stoi(part.substr(0, dash));
        const int hi = std::stoi(part.substr(dash + 1));
        for (int i = lo; i <= hi; ++i) ids.push_back(i);
      }
    }
  } catch (const std::logic_error&) {
    throw UsageError("invalid revision list '" + text + "'");
  }
  if (ids.empty()) throw UsageError("empty revision list");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string IdsText(const std::vector<int>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out += (i == 0 ? "" : ", ") + std::to_string(ids[i]);
  }
  return out + "}";
}

Registry OpenStore(const Options& opt) {
  std::string root = opt.store;
  if (root.empty()) {
    if (const char* env = std::getenv("APIEVO_STORE")) root = env;
  }
  if (root.empty()) throw UsageError("no store given: pass --store or set APIEVO_STORE");
  return Registry(root);
}

Direction ParseDirection(const std::string& text) {
  if (text == "req" || text == "request") return Direction::kRequest;
  if (text == "resp" || text == "response") return Direction::kResponse;
  throw UsageError("direction must be 'req' or 'resp', not '" + text + "'");
}

Bytes ReadBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, path, "cannot read file");
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteBytes(const std::string& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, path, "cannot write file");
}

json DiagnosticJson(const Diagnostic& d) {
  return {{"severity", d.severity == Severity::kError ? "error" : "warning"},
          {"code", ErrorCodeName(d.code)},
          {"path", d.path},
          {"message", d.message}};
}

json ShapeJson(const TypeShape& shape) { return shape.ToString(); }

json SchemaJson(const Schema& schema) {
  json records = json::array();
  for (const auto& r : schema.records) {
    json fields = json::array();
    for (const auto& f : r.fields) {
      fields.push_back({{"name", f.name},
                        {"internal_name", f.internal_name},
                        {"type", ShapeJson(f.type)},
                        {"optionality", OptionalityName(f.optionality)}});
    }
    records.push_back({{"name", r.name},
                       {"internal_name", r.internal_name},
                       {"exception", r.is_exception},
                       {"abstract", r.is_abstract},
                       {"alternatives", r.alternatives},
                       {"fields", fields}});
  }
  json enums = json::array();
  for (const auto& e : schema.enums) {
    enums.push_back({{"name", e.name}, {"internal_name", e.internal_name}, {"members", e.members}});
  }
  json services = json::array();
  for (const auto& s : schema.services) {
    json ops = json::array();
    for (const auto& op : s.operations) {
      ops.push_back({{"name", op.name},
                     {"internal_name", op.internal_name},
                     {"input", ShapeJson(op.input)},
                     {"output", ShapeJson(op.output)},
                     {"throws", op.exceptions}});
    }
    services.push_back({{"name", s.name}, {"internal_name", s.internal_name}, {"operations", ops}});
  }
  return {{"records", records}, {"enums", enums}, {"services", services}};
}

json ChangeSetJson(const ChangeSet& set) {
  json changes = json::array();
  for (const auto& c : set.changes) {
    changes.push_back({{"kind", ChangeKindName(c.kind)},
                       {"element", ElementKindName(c.element)},
                       {"before", c.before},
                       {"after", c.after},
                       {"detail", c.detail}});
  }
  return {{"from", set.from}, {"to", set.to}, {"changes", changes}};
}

json ResolutionJson(const ResolutionMap& map) {
  json records = json::array();
  for (const auto& r : map.records) {
    json fields = json::array();
    for (const auto& f : r.fields) {
      fields.push_back({{"client", f.client_field},
                        {"matched", f.matched},
                        {"internal", f.matched ? json(f.internal_field) : json(nullptr)}});
    }
    records.push_back({{"client", r.client_type},
                       {"internal", r.internal_type},
                       {"fields", fields},
                       {"ignored", r.ignored}});
  }
  json enums = json::array();
  for (const auto& e : map.enums) {
    enums.push_back({{"client", e.client_enum}, {"internal", e.internal_enum}, {"members", e.members}});
  }
  json ops = json::array();
  for (const auto& o : map.operations) {
    ops.push_back({{"client", o.client_path}, {"internal", o.internal_path}});
  }
  return {{"ok", true},
          {"api", map.api_name},
          {"revision", map.provider_revision},
          {"records", records},
          {"enums", enums},
          {"operations", ops}};
}

// ---------------------------------------------------------------------------

int Validate(const Options& opt, std::ostream& out) {
  const ApiDefinition def = ParseSyntax(ReadTextFile(opt.file));
  const auto diagnostics = ValidateWellformedness(def);
  if (opt.json) {
    json list = json::array();
    for (const auto& d : diagnostics) list.push_back(DiagnosticJson(d));
    out << json{{"ok", diagnostics.empty()},
                {"api", def.name},
                {"elements", def.elements.size()},
                {"diagnostics", list}}
               .dump(2)
        << '\n';
  } else if (diagnostics.empty()) {
    out << "ok: api " << def.name << " with " << def.elements.size() << " elements\n";
  } else {
    for (const auto& d : diagnostics) out << d.ToString() << '\n';
  }
  return diagnostics.empty() ? kExitOk : kExitDomainError;
}

int Publish(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const PublishResult result = store.Publish(opt.api, ReadTextFile(opt.file));
  if (opt.json) {
    json warnings = json::array();
    for (const auto& w : result.warnings) warnings.push_back(DiagnosticJson(w));
    out << json{{"ok", true},
                {"api", opt.api},
                {"revision", result.revision},
                {"supported", result.supported},
                {"warnings", warnings}}
               .dump(2)
        << '\n';
  } else {
    out << "published " << opt.api << " revision " << result.revision << '\n';
    for (const auto& w : result.warnings) out << w.ToString() << '\n';
  }
  return kExitOk;
}

int DiffCommand(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const ChangeSet set = Diff(store.LoadHistory(opt.api), opt.from, opt.to);
  if (opt.json) {
    out << ChangeSetJson(set).dump(2) << '\n';
  } else {
    out << set.ToText();
  }
  return kExitOk;
}

InternalRepresentation InternalFor(const Options& opt, const Registry& store,
                                   const RevisionHistory& history) {
  if (opt.supported.empty()) return store.LoadInternal(opt.api);
  return DeriveInternal(history, ParseIds(opt.supported));
}

int InternalRep(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const RevisionHistory history = store.LoadHistory(opt.api);
  const InternalRepresentation rep = InternalFor(opt, store, history);
  if (opt.json) {
    json reps = json::array();
    for (const auto& [key, internal] : rep.representatives()) {
      reps.push_back({{"revision", key.first}, {"path", key.second}, {"internal", internal}});
    }
    json j = SchemaJson(rep.schema());
    j["api"] = rep.api_name();
    j["supported"] = rep.supported();
    j["representatives"] = reps;
    out << j.dump(2) << '\n';
  } else {
    out << rep.ToText();
  }
  return kExitOk;
}

ResolutionMap ResolveFor(const Options& opt, const Registry& store) {
  const RevisionHistory history = store.LoadHistory(opt.api);
  auto rep = std::make_shared<const InternalRepresentation>(InternalFor(opt, store, history));
  const ApiDefinition client = ParseClientDefinition(ReadTextFile(opt.client_file));
  return Resolve(client, opt.revision, history, rep);
}

int ResolveCommand(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const ResolutionMap map = ResolveFor(opt, store);
  if (opt.json) {
    out << ResolutionJson(map).dump(2) << '\n';
  } else {
    out << map.ToText();
  }
  return kExitOk;
}

int Convert(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const Direction direction = ParseDirection(opt.direction);
  ResolutionMap map = [&] {
    try {
      return ResolveFor(opt, store);
    } catch (const Error& e) {
      throw ResolutionFailure{e};
    }
  }();
  ConvertOptions options;
  for (const auto& f : opt.fallbacks) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw UsageError("fallback must read Enum=MEMBER, not '" + f + "'");
    options.enum_fallbacks[f.substr(0, eq)] = f.substr(eq + 1);
  }
  const RecordMatch* match = map.ForClient(opt.type);
  if (match == nullptr) {
    throw Error(ErrorCode::kUnknownElement, opt.type,
                "client definition has no record '" + opt.type + "'");
  }
  const Schema& client_schema = map.client_schema;
  const Schema& internal_schema = map.internal->schema();
  const TypeShape client_shape = client_schema.ShapeOf(opt.type);
  const TypeShape internal_shape = internal_schema.ShapeOf(match->internal_type);

  // Requests travel client -> provider, responses provider -> client.
  const bool request = direction == Direction::kRequest;
  const Schema& source_schema = request ? client_schema : internal_schema;
  const TypeShape& source_shape = request ? client_shape : internal_shape;
  Value source;
  if (opt.from_json) {
    source = ValueFromJson(json::parse(ReadTextFile(opt.in)), source_schema, source_shape);
    CheckConforms(source, source_schema, source_shape, direction);
  } else {
    source = Decode(ReadBytes(opt.in), source_schema, source_shape, direction);
  }
  const Value target = request ? ToInternal(source, map, direction)
                               : ToClient(source, map, direction, options);
  const Bytes bytes = request ? Encode(target, internal_schema, internal_shape, direction)
                              : Encode(target, client_schema, client_shape, direction);
  if (!opt.out.empty()) WriteBytes(opt.out, bytes);
  if (opt.json) {
    out << json{{"ok", true},
                {"direction", request ? "request" : "response"},
                {"input", ValueToJson(source)},
                {"output", ValueToJson(target)},
                {"bytes", ToHex(bytes)}}
               .dump(2)
        << '\n';
  } else {
    out << "converted " << opt.type << (request ? " request" : " response") << ": "
        << bytes.size() << " bytes\n";
  }
  return kExitOk;
}

int Status(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  std::vector<std::string> apis;
  if (opt.api.empty()) {
    apis = store.Apis();
  } else {
    apis.push_back(opt.api);
  }
  json list = json::array();
  for (const auto& api : apis) {
    const ApiStatus s = store.Status(api);
    json clients = json::array();
    for (const auto& c : s.clients) {
      clients.push_back({{"name", c.name},
                         {"revision", c.revision},
                         {"digest", c.digest},
                         {"orphaned", c.orphaned}});
    }
    list.push_back({{"api", s.api}, {"head", s.head}, {"supported", s.supported}, {"clients", clients}});
    if (!opt.json) {
      out << s.api << ": head " << s.head << ", supported " << IdsText(s.supported) << '\n';
      for (const auto& c : s.clients) {
        out << "  client " << c.name << " -> revision " << c.revision
            << (c.orphaned ? " (orphaned)" : "") << '\n';
      }
    }
  }
  if (opt.json) out << json{{"apis", list}}.dump(2) << '\n';
  return kExitOk;
}

int SetSupportedCommand(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  const SupportReport report = store.SetSupported(opt.api, ParseIds(opt.ids), opt.force);
  if (opt.json) {
    out << json{{"ok", true},
                {"previous", report.previous},
                {"current", report.current},
                {"changed", report.changed},
                {"orphaned_clients", report.orphaned_clients}}
               .dump(2)
        << '\n';
  } else {
    out << opt.api << ": supported " << IdsText(report.previous) << " -> "
        << IdsText(report.current) << (report.changed ? "" : " (unchanged)") << '\n';
    for (const auto& c : report.orphaned_clients) out << "  orphaned client " << c << '\n';
  }
  return kExitOk;
}

int RegisterClientCommand(const Options& opt, std::ostream& out) {
  Registry store = OpenStore(opt);
  store.RegisterClient(opt.api, opt.client_name, ReadTextFile(opt.file), opt.revision);
  if (opt.json) {
    out << json{{"ok", true}, {"api", opt.api}, {"client", opt.client_name}, {"revision", opt.revision}}
               .dump(2)
        << '\n';
  } else {
    out << "registered client " << opt.client_name << " for " << opt.api << " revision "
        << opt.revision << '\n';
  }
  return kExitOk;
}

std::string_view Embedded(std::string_view name) {
  for (const auto& [file, text] : corpus::kFiles) {
    if (file == name) return text;
  }
  throw Error(ErrorCode::kIoError, std::string(name), "not embedded");
}

int Bench(const Options& opt, std::ostream& out) {
  if (opt.iterations < 1) throw UsageError("--iterations must be positive");
  const auto started = std::chrono::steady_clock::now();
  RevisionHistory history("customer");
  for (int i = 1; i <= 6; ++i) {
    history = history.Append(
        ParseDefinition(Embedded("customer/r" + std::to_string(i) + ".api")));
  }
  auto rep = std::make_shared<const InternalRepresentation>(
      DeriveInternal(history, {1, 2, 3, 4, 5, 6}));
  const ResolutionMap map =
      Resolve(ParseClientDefinition(Embedded("clients/crm_r1.api")), 1, history, rep);
  const Schema& cs = map.client_schema;
  const Schema& is = rep->schema();
  const TypeShape client_shape = cs.ShapeOf("Customer");
  const TypeShape internal_shape = is.ShapeOf(map.ForClient("Customer")->internal_type);
  const Value customer = Value::Record(
      "Customer", {{"firstName", Value::String("Ada")},
                   {"lastName", Value::String("Lovelace")},
                   {"gender", Value::Int32(1)},
                   {"address", Value::Record("Address", {{"street", Value::String("St James's Square")},
                                                         {"number", Value::String("12")},
                                                         {"postalCode", Value::String("SW1Y 4JH")},
                                                         {"city", Value::String("London")}})}});
  const Bytes request = Encode(customer, cs, client_shape, Direction::kRequest);

  auto round_trip = [&] {
    const Value in = Decode(request, cs, client_shape, Direction::kRequest);
    const Value internal = ToInternal(in, map, Direction::kRequest);
    const Bytes provider = Encode(internal, is, internal_shape, Direction::kResponse);
    const Value back = ToClient(Decode(provider, is, internal_shape, Direction::kResponse), map,
                                Direction::kResponse);
    return Encode(back, cs, client_shape, Direction::kResponse);
  };
  if (round_trip() != request) {
    throw Error(ErrorCode::kUnrepresentableValue, "Customer", "round trip changed the payload");
  }
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(opt.iterations));
  for (int i = 0; i < std::min(1000, opt.iterations); ++i) round_trip();
  for (int i = 0; i < opt.iterations; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Bytes b = round_trip();
    const auto t1 = std::chrono::steady_clock::now();
    if (b.empty()) return kExitDomainError;
    samples.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  const double median = samples[samples.size() / 2];
  const double p90 = samples[samples.size() * 9 / 10];
  double mean = 0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (opt.json) {
    out << json{{"iterations", opt.iterations},
                {"median_us", median},
                {"p90_us", p90},
                {"mean_us", mean},
                {"total_s", total}}
               .dump(2)
        << '\n';
  } else {
    out << "bench: customer r1 client -> internal representation {1..6} -> r1 client\n"
        << "  iterations " << opt.iterations << '\n'
        << "  median " << median << " us\n"
        << "  p90 " << p90 << " us\n"
        << "  mean " << mean << " us\n"
        << "  total " << total << " s\n";
  }
  return kExitOk;
}

void ReportError(const Error& e, const Options& opt, std::ostream& out, std::ostream& err) {
  for (const auto& d : e.diagnostics()) err << d.ToString() << '\n';
  if (opt.json) {
    json list = json::array();
    for (const auto& d : e.diagnostics()) list.push_back(DiagnosticJson(d));
    out << json{{"ok", false}, {"errors", list}}.dump(2) << '\n';
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Continuous API evolution: definitions, revisions, schemas and payload conversion",
               "apievo"};
  app.require_subcommand(1);
  app.add_option("--store", opt.store, "Registry root (default: $APIEVO_STORE)");
  app.add_flag("--json", opt.json, "Machine-readable output");

  auto* validate = app.add_subcommand("validate", "Parse and check a definition file");
  validate->add_option("file", opt.file)->required();

  auto* publish = app.add_subcommand("publish", "Publish a new revision");
  publish->add_option("api", opt.api)->required();
  publish->add_option("file", opt.file)->required();

  auto* diff = app.add_subcommand("diff", "Classify the changes between two revisions");
  diff->add_option("api", opt.api)->required();
  diff->add_option("from", opt.from)->required();
  diff->add_option("to", opt.to)->required();

  auto* internal = app.add_subcommand("internal-rep", "Print the merged internal representation");
  internal->add_option("api", opt.api)->required();
  internal->add_option("--supported", opt.supported, "Revision list, e.g. 2,4-6 (default: stored set)");

  auto* resolve = app.add_subcommand("resolve", "Match a client definition against a revision");
  resolve->add_option("api", opt.api)->required();
  resolve->add_option("client", opt.client_file)->required();
  resolve->add_option("--revision", opt.revision)->required();
  resolve->add_option("--supported", opt.supported);

  auto* convert = app.add_subcommand("convert", "Convert a payload between client and provider");
  convert->add_option("api", opt.api)->required();
  convert->add_option("--client", opt.client_file)->required();
  convert->add_option("--revision", opt.revision)->required();
  convert->add_option("--type", opt.type, "Client record type")->required();
  convert->add_option("--direction", opt.direction, "req or resp");
  convert->add_option("--in", opt.in)->required();
  convert->add_option("--out", opt.out);
  convert->add_option("--supported", opt.supported);
  convert->add_option("--fallback", opt.fallbacks, "Enum=MEMBER for unrepresentable members");
  convert->add_flag("--from-json", opt.from_json, "Read the input as a JSON value tree");

  auto* registry = app.add_subcommand("registry", "Inspect and manage the registry");
  registry->require_subcommand(1);
  auto* status = registry->add_subcommand("status", "Show revisions, supported set and clients");
  status->add_option("api", opt.api);
  auto* set_supported = registry->add_subcommand("set-supported", "Replace the supported set");
  set_supported->add_option("api", opt.api)->required();
  set_supported->add_option("revisions", opt.ids, "e.g. 2,4-6")->required();
  set_supported->add_flag("--force", opt.force, "Orphan clients of dropped revisions");
  auto* register_client = registry->add_subcommand("register-client", "Record a client definition");
  register_client->add_option("api", opt.api)->required();
  register_client->add_option("name", opt.client_name)->required();
  register_client->add_option("file", opt.file)->required();
  register_client->add_option("--revision", opt.revision)->required();

  auto* bench = app.add_subcommand("bench", "Time a client -> provider -> client round trip");
  bench->add_option("--iterations", opt.iterations);

  for (auto* sub : {validate, publish, diff, internal, resolve, convert, registry, bench}) {
    sub->fallthrough();
  }
  for (auto* sub : {status, set_supported, register_client}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return Validate(opt, out);
    if (publish->parsed()) return Publish(opt, out);
    if (diff->parsed()) return DiffCommand(opt, out);
    if (internal->parsed()) return InternalRep(opt, out);
    if (resolve->parsed()) return ResolveCommand(opt, out);
    if (convert->parsed()) return Convert(opt, out);
    if (status->parsed()) return Status(opt, out);
    if (set_supported->parsed()) return SetSupportedCommand(opt, out);
    if (register_client->parsed()) return RegisterClientCommand(opt, out);
    if (bench->parsed()) return Bench(opt, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResolutionFailure& f) {
    ReportError(f.error, opt, out, err);
    return kExitResolution;
  } catch (const Error& e) {
    ReportError(e, opt, out, err);
    return kExitDomainError;
  } catch (const json::exception& e) {
    err << "error: IoError: invalid JSON input: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace apievo::cli
