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


#include "apievo/registry.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "apievo/adl.hpp"
#include "apievo/resolution.hpp"

namespace apievo {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

constexpr int kFormatVersion = 1;
constexpr const char* kManifest = "meta.json";

struct Meta {
  std::string api;
  std::vector<std::string> revision_digests;  // [i] belongs to revision i+1
  std::vector<int> supported;
  std::vector<ClientRecord> clients;

  int head() const { return static_cast<int>(revision_digests.size()); }
};

Error Corrupt(const fs::path& file, const std::string& why) {
  return Error(ErrorCode::kStoreCorrupt, file.string(), why);
}

std::string ReadFile(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, file.string(), "cannot read file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

json MetaToJson(const Meta& meta) {
  json clients = json::array();
  for (const auto& c : meta.clients) {
    clients.push_back({{"name", c.name},
                       {"revision", c.revision},
                       {"digest", c.digest},
                       {"orphaned", c.orphaned}});
  }
  json revisions = json::array();
  for (std::size_t i = 0; i < meta.revision_digests.size(); ++i) {
    revisions.push_back({{"id", i + 1}, {"digest", meta.revision_digests[i]}});
  }
  return {{"format", kFormatVersion}, {"api", meta.api},
          {"head", meta.head()},      {"revisions", revisions},
          {"supported", meta.supported}, {"clients", clients}};
}

Meta MetaFromJson(const json& j, const fs::path& file) {
  try {
    if (j.at("format").get<int>() != kFormatVersion) {
      throw Corrupt(file, "unsupported manifest format");
    }
    Meta meta;
    meta.api = j.at("api").get<std::string>();
    const auto& revisions = j.at("revisions");
    for (std::size_t i = 0; i < revisions.size(); ++i) {
      if (revisions[i].at("id").get<std::size_t>() != i + 1) {
        throw Corrupt(file, "revision ids are not dense");
      }
      meta.revision_digests.push_back(revisions[i].at("digest").get<std::string>());
    }
    if (j.at("head").get<int>() != meta.head()) {
      throw Corrupt(file, "head does not match the revision list");
    }
    meta.supported = j.at("supported").get<std::vector<int>>();
    for (const auto& c : j.at("clients")) {
      meta.clients.push_back({c.at("name").get<std::string>(),
                              c.at("revision").get<int>(),
                              c.at("digest").get<std::string>(),
                              c.at("orphaned").get<bool>()});
    }
    return meta;
  } catch (const json::exception& e) {
    throw Corrupt(file, std::string("malformed manifest: ") + e.what());
  }
}

json KeyMapToJson(const std::map<MemberKey, MemberKey>& m) {
  json out = json::array();
  for (const auto& [to, from] : m) out.push_back({to.ToString(), from.ToString()});
  return out;
}

json RelationToJson(const PredecessorMap& relation, int to) {
  return {{"from", to - 1},
          {"to", to},
          {"types", relation.types},
          {"services", relation.services},
          {"operations", KeyMapToJson(relation.operations)},
          {"enum_members", KeyMapToJson(relation.enum_members)},
          {"fields", KeyMapToJson(relation.fields)}};
}

void CheckName(const std::string& name, const char* what) {
  static const std::regex kPattern("[A-Za-z_][A-Za-z0-9_]*(\\.[A-Za-z_][A-Za-z0-9_]*)*");
  static const std::regex kClient("[A-Za-z0-9_][A-Za-z0-9_.-]*");
  const bool ok = std::string_view(what) == "client"
                      ? std::regex_match(name, kClient)
                      : std::regex_match(name, kPattern);
  if (!ok) {
    throw Error(ErrorCode::kUnknownApi, name,
                "'" + name + "' is not a valid " + what + " name");
  }
}

std::string RevisionFile(int id) { return "rev-" + std::to_string(id) + ".api"; }
std::string RelationFile(int id) { return "rel-" + std::to_string(id) + ".json"; }

}  // namespace

class Registry::Lock {
 public:
  Lock(const fs::path& dir, std::chrono::milliseconds timeout) {
    const fs::path file = dir / ".lock";
    fd_ = ::open(file.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error(ErrorCode::kIoError, file.string(), "cannot open lock file");
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
      if (std::chrono::steady_clock::now() >= deadline) {
        ::close(fd_);
        throw Error(ErrorCode::kConcurrentPublish, dir.filename().string(),
                    "another writer holds the lock on '" + dir.filename().string() + "'");
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
  }
  ~Lock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  Lock(const Lock&) = delete;
  Lock& operator=(const Lock&) = delete;

 private:
  int fd_ = -1;
};

namespace {

Meta ReadMeta(const fs::path& dir, const std::string& api, bool must_exist) {
  const fs::path file = dir / kManifest;
  if (!fs::exists(file)) {
    if (must_exist) {
      throw Error(ErrorCode::kUnknownApi, api, "the registry has no API '" + api + "'");
    }
    Meta meta;
    meta.api = api;
    return meta;
  }
  json j;
  try {
    j = json::parse(ReadFile(file));
  } catch (const json::parse_error& e) {
    throw Corrupt(file, std::string("manifest is not JSON: ") + e.what());
  }
  Meta meta = MetaFromJson(j, file);
  if (meta.api != api) throw Corrupt(file, "manifest names API '" + meta.api + "'");
  return meta;
}

RevisionHistory BuildHistory(const fs::path& dir, const Meta& meta) {
  RevisionHistory history(meta.api);
  for (int id = 1; id <= meta.head(); ++id) {
    const fs::path file = dir / RevisionFile(id);
    if (!fs::exists(file)) throw Corrupt(file, "revision file is missing");
    const std::string text = ReadFile(file);
    if (Sha256Hex(text) != meta.revision_digests[static_cast<std::size_t>(id - 1)]) {
      throw Corrupt(file, "revision file does not match its recorded digest");
    }
    history = history.Append(ParseDefinition(text));
    const fs::path rel = dir / RelationFile(id);
    if (id > 1 && fs::exists(rel)) {
      json cached;
      try {
        cached = json::parse(ReadFile(rel));
      } catch (const json::parse_error&) {
        throw Corrupt(rel, "relation cache is not JSON");
      }
      if (cached != RelationToJson(history.relation(id), id)) {
        throw Corrupt(rel, "relation cache disagrees with the revisions");
      }
    }
  }
  return history;
}

}  // namespace

Registry::Registry(fs::path root) : root_(std::move(root)) {}

fs::path Registry::Dir(const std::string& api) const {
  CheckName(api, "API");
  return root_ / api;
}

void Registry::WriteAtomically(const fs::path& file, std::string_view content) const {
  const fs::path temp = file.string() + ".tmp-" + std::to_string(::getpid()) + "-" +
                        std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    const int fd = ::open(temp.c_str(), O_CREAT | O_TRUNC | O_WRONLY | O_CLOEXEC, 0644);
    if (fd < 0) throw Error(ErrorCode::kIoError, temp.string(), "cannot create file");
    std::size_t written = 0;
    while (written < content.size()) {
      const ssize_t n = ::write(fd, content.data() + written, content.size() - written);
      if (n <= 0) {
        ::close(fd);
        throw Error(ErrorCode::kIoError, temp.string(), "write failed");
      }
      written += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
  }
  if (fault_hook_) fault_hook_(file);
  std::error_code ec;
  fs::rename(temp, file, ec);
  if (ec) throw Error(ErrorCode::kIoError, file.string(), "rename failed: " + ec.message());
}

PublishResult Registry::Publish(const std::string& api, std::string_view text) {
  const fs::path dir = Dir(api);
  ApiDefinition definition = ParseDefinition(text);
  fs::create_directories(dir);
  Lock lock(dir, lock_timeout_);
  Meta meta = ReadMeta(dir, api, false);
  RevisionHistory history = BuildHistory(dir, meta).Append(std::move(definition));

  PublishResult result;
  result.revision = history.head();
  std::vector<int> supported = meta.supported;
  supported.push_back(result.revision);
  try {
    DeriveInternal(history, supported);
    meta.supported = supported;
    result.supported = true;
  } catch (const Error& e) {
    for (const auto& d : e.diagnostics()) {
      result.warnings.push_back({Severity::kWarning, d.code, d.path,
                                 "revision " + std::to_string(result.revision) +
                                     " not added to the supported set: " + d.message});
    }
  }
  WriteAtomically(dir / RevisionFile(result.revision), text);
  if (result.revision > 1) {
    WriteAtomically(dir / RelationFile(result.revision),
                    RelationToJson(history.relation(result.revision), result.revision).dump(2) + "\n");
  }
  meta.revision_digests.push_back(Sha256Hex(text));
  WriteAtomically(dir / kManifest, MetaToJson(meta).dump(2) + "\n");
  return result;
}

void Registry::RegisterClient(const std::string& api, const std::string& client,
                              std::string_view text, int revision) {
  CheckName(client, "client");
  const fs::path dir = Dir(api);
  ApiDefinition definition = ParseClientDefinition(text);
  if (!fs::exists(dir / kManifest)) {
    throw Error(ErrorCode::kUnknownApi, api, "the registry has no API '" + api + "'");
  }
  Lock lock(dir, lock_timeout_);
  Meta meta = ReadMeta(dir, api, true);
  RevisionHistory history = BuildHistory(dir, meta);
  history.revision(revision);
  if (std::find(meta.supported.begin(), meta.supported.end(), revision) ==
      meta.supported.end()) {
    throw Error(ErrorCode::kUnsupportedRevision, std::to_string(revision),
                "revision " + std::to_string(revision) + " of '" + api +
                    "' is not supported");
  }
  auto internal = std::make_shared<const InternalRepresentation>(
      DeriveInternal(history, meta.supported));
  Resolve(definition, revision, history, internal);

  fs::create_directories(dir / "clients");
  WriteAtomically(dir / "clients" / (client + ".api"), text);
  ClientRecord record{client, revision, Sha256Hex(text), false};
  auto it = std::find_if(meta.clients.begin(), meta.clients.end(),
                         [&](const ClientRecord& c) { return c.name == client; });
  if (it == meta.clients.end()) {
    meta.clients.push_back(record);
    std::sort(meta.clients.begin(), meta.clients.end(),
              [](const ClientRecord& a, const ClientRecord& b) { return a.name < b.name; });
  } else {
    *it = record;
  }
  WriteAtomically(dir / kManifest, MetaToJson(meta).dump(2) + "\n");
}

SupportReport Registry::SetSupported(const std::string& api, std::vector<int> revisions,
                                     bool force) {
  const fs::path dir = Dir(api);
  if (!fs::exists(dir / kManifest)) {
    throw Error(ErrorCode::kUnknownApi, api, "the registry has no API '" + api + "'");
  }
  Lock lock(dir, lock_timeout_);
  Meta meta = ReadMeta(dir, api, true);
  std::sort(revisions.begin(), revisions.end());
  revisions.erase(std::unique(revisions.begin(), revisions.end()), revisions.end());
  RevisionHistory history = BuildHistory(dir, meta);
  DeriveInternal(history, revisions);

  SupportReport report;
  report.previous = meta.supported;
  std::sort(report.previous.begin(), report.previous.end());
  report.current = revisions;
  auto supported = [&](int id) {
    return std::binary_search(revisions.begin(), revisions.end(), id);
  };
  std::vector<Diagnostic> blocking;
  for (auto& c : meta.clients) {
    if (supported(c.revision) || c.orphaned) continue;
    blocking.push_back({Severity::kError, ErrorCode::kClientsStillReferencing, c.name,
                        "client '" + c.name + "' still uses revision " +
                            std::to_string(c.revision)});
  }
  if (!blocking.empty() && !force) throw Error(std::move(blocking));
  for (auto& c : meta.clients) {
    const bool orphaned = !supported(c.revision);
    if (orphaned && !c.orphaned) report.orphaned_clients.push_back(c.name);
    c.orphaned = orphaned;
  }
  const json before = MetaToJson(meta);
  report.changed = report.previous != report.current || !report.orphaned_clients.empty();
  meta.supported = revisions;
  if (report.changed || MetaToJson(meta) != before) {
    WriteAtomically(dir / kManifest, MetaToJson(meta).dump(2) + "\n");
  }
  return report;
}

ApiStatus Registry::Status(const std::string& api) const {
  const fs::path dir = Dir(api);
  const Meta meta = ReadMeta(dir, api, true);
  ApiStatus status;
  status.api = api;
  status.head = meta.head();
  status.supported = meta.supported;
  std::sort(status.supported.begin(), status.supported.end());
  status.clients = meta.clients;
  return status;
}

std::vector<std::string> Registry::Apis() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_, ec)) {
    if (entry.is_directory() && fs::exists(entry.path() / kManifest)) {
      out.push_back(entry.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RevisionHistory Registry::LoadHistory(const std::string& api) const {
  const fs::path dir = Dir(api);
  return BuildHistory(dir, ReadMeta(dir, api, true));
}

InternalRepresentation Registry::LoadInternal(const std::string& api) const {
  const fs::path dir = Dir(api);
  const Meta meta = ReadMeta(dir, api, true);
  return DeriveInternal(BuildHistory(dir, meta), meta.supported);
}

std::string Registry::LoadClientText(const std::string& api,
                                     const std::string& client) const {
  CheckName(client, "client");
  const fs::path dir = Dir(api);
  const Meta meta = ReadMeta(dir, api, true);
  auto it = std::find_if(meta.clients.begin(), meta.clients.end(),
                         [&](const ClientRecord& c) { return c.name == client; });
  if (it == meta.clients.end()) {
    throw Error(ErrorCode::kUnknownClient, client,
                "no client '" + client + "' is registered for '" + api + "'");
  }
  const fs::path file = dir / "clients" / (client + ".api");
  std::string text = ReadFile(file);
  if (Sha256Hex(text) != it->digest) throw Corrupt(file, "client file does not match its digest");
  return text;
}

}  // namespace apievo
