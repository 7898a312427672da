// Copyright 2026 The bos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bos/embedding.hpp"
#include "json.hpp"

extern char **environ;

namespace bos {

namespace {

constexpr std::size_t kMaxDiagnostic = 4096;

// Temporary file removed on scope exit.
class TempFile {
 public:
  explicit TempFile(const char *stem) {
    std::string pattern =
        (std::filesystem::temp_directory_path() / (std::string(stem) + "-XXXXXX")).string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    const int fd = ::mkstemp(buf.data());
    if (fd < 0) {
      throw Error(ErrorCode::kIo, std::string("mkstemp failed: ") + std::strerror(errno));
    }
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

std::string Tail(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() > kMaxDiagnostic) text = "..." + text.substr(text.size() - kMaxDiagnostic);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

}  // namespace

EmbeddingMatrix RequestEmbeddings(const Corpus &corpus,
                                  const std::string &provider_command,
                                  const std::filesystem::path &out) {
  if (provider_command.empty()) {
    throw Error(ErrorCode::kInvalidParameter, "empty embedding provider command");
  }
  TempFile input("bos-groups");
  TempFile diagnostics("bos-provider-err");
  {
    std::ofstream in(input.path(), std::ios::binary);
    for (const auto &entry : CorpusIndex(corpus)) {
      nlohmann::ordered_json j;
      j["row"] = entry.row;
      j["doc"] = entry.doc;
      j["group"] = entry.group;
      j["text"] = corpus.GroupAt(entry.row).Text();
      in << j.dump() << '\n';
    }
    if (!in) throw Error(ErrorCode::kIo, "cannot write provider input " + input.path());
  }
  std::error_code ec;
  std::filesystem::remove(out, ec);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, input.path().c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, diagnostics.path().c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0600);

  const std::string out_str = out.string();
  const std::string script = provider_command + " \"$@\"";
  std::vector<std::string> args = {"/bin/sh", "-c", script, "bos-provider", out_str};
  std::vector<char *> argv;
  for (auto &a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  std::vector<std::string> env_storage;
  for (char **e = environ; e != nullptr && *e != nullptr; ++e) {
    if (std::strncmp(*e, "BOS_EMB_OUT=", 12) != 0) env_storage.emplace_back(*e);
  }
  env_storage.push_back("BOS_EMB_OUT=" + out_str);
  std::vector<char *> envp;
  for (auto &e : env_storage) envp.push_back(e.data());
  envp.push_back(nullptr);

  pid_t pid = 0;
  const int rc = posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    throw Error(ErrorCode::kProvider,
                std::string("cannot launch embedding provider: ") + std::strerror(rc));
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) {
      throw Error(ErrorCode::kProvider,
                  std::string("waitpid failed: ") + std::strerror(errno));
    }
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::ostringstream msg;
    msg << "embedding provider ";
    if (WIFEXITED(status)) {
      msg << "exited with status " << WEXITSTATUS(status);
    } else {
      msg << "terminated by signal " << WTERMSIG(status);
    }
    const std::string tail = Tail(diagnostics.path());
    if (!tail.empty()) msg << ": " << tail;
    throw Error(ErrorCode::kProvider, msg.str());
  }
  if (!std::filesystem::exists(out)) {
    throw Error(ErrorCode::kProvider,
                "embedding provider exited successfully but wrote no file to " + out_str);
  }
  EmbeddingMatrix matrix = LoadEmbeddings(out);
  const auto index_path = IndexPath(out);
  if (std::filesystem::exists(index_path)) {
    const auto index = LoadIndex(index_path);
    CheckAlignment(matrix, corpus, &index);
  } else {
    CheckAlignment(matrix, corpus);
    WriteIndex(index_path, CorpusIndex(corpus));
  }
  return matrix;
}

}  // namespace bos
