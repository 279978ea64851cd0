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

/// \file
///
/// File-backed store of revision histories, supported sets and client
/// registrations. See docs/registry-format.md for the on-disk layout.
///
/// Every mutation takes an exclusive advisory lock on the API's lock file
/// and replaces files by writing a temporary file and renaming it. The
/// manifest is renamed last, so a crash before that point leaves the store
/// in its previous state.

#ifndef APIEVO_REGISTRY_HPP_
#define APIEVO_REGISTRY_HPP_

#include <chrono>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "apievo/ast.hpp"
#include "apievo/error.hpp"
#include "apievo/internal_rep.hpp"
#include "apievo/revision.hpp"

namespace apievo {

struct ClientRecord {
  std::string name;
  int revision = 0;
  std::string digest;  // SHA-256 of the definition text, hex
  bool orphaned = false;
};

struct PublishResult {
  int revision = 0;
  bool supported = false;  // added to the supported set
  std::vector<Diagnostic> warnings;
};

struct SupportReport {
  std::vector<int> previous;
  std::vector<int> current;
  std::vector<std::string> orphaned_clients;  // newly orphaned by `force`
  bool changed = false;
};

struct ApiStatus {
  std::string api;
  int head = 0;
  std::vector<int> supported;
  std::vector<ClientRecord> clients;
};

class Registry {
 public:
  explicit Registry(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// Appends a revision. The new revision joins the supported set unless
  /// the merged internal representation cannot be derived, in which case a
  /// warning says why. Throws parse, validation and relation errors, or
  /// Error(kConcurrentPublish) if the lock cannot be taken in time.
  PublishResult Publish(const std::string& api, std::string_view text);

  /// Records a client written against `revision`. Throws
  /// Error(kUnsupportedRevision) and resolution errors.
  void RegisterClient(const std::string& api, const std::string& client,
                      std::string_view text, int revision);

  /// Replaces the supported set. Dropping a revision a client still uses
  /// throws Error(kClientsStillReferencing) unless `force` is set, in which
  /// case the client is flagged as orphaned.
  SupportReport SetSupported(const std::string& api, std::vector<int> revisions,
                             bool force);

  ApiStatus Status(const std::string& api) const;
  std::vector<std::string> Apis() const;

  RevisionHistory LoadHistory(const std::string& api) const;
  InternalRepresentation LoadInternal(const std::string& api) const;
  std::string LoadClientText(const std::string& api, const std::string& client) const;

  void set_lock_timeout(std::chrono::milliseconds timeout) { lock_timeout_ = timeout; }

  /// Called right before each rename with the destination file name. A
  /// hook that throws simulates a crash at that point.
  void set_fault_hook(std::function<void(const std::filesystem::path&)> hook) {
    fault_hook_ = std::move(hook);
  }

 private:
  class Lock;

  std::filesystem::path Dir(const std::string& api) const;
  void WriteAtomically(const std::filesystem::path& file, std::string_view content) const;

  std::filesystem::path root_;
  std::chrono::milliseconds lock_timeout_{5000};
  std::function<void(const std::filesystem::path&)> fault_hook_;
};

/// Lower-case hex SHA-256.
std::string Sha256Hex(std::string_view data);

}  // namespace apievo

#endif  // APIEVO_REGISTRY_HPP_
