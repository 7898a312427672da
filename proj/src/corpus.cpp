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

#include "bos/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <string>
#include <unordered_set>

#include "bos/error.hpp"
#include "json.hpp"

namespace bos {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsCloser(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}
bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}
bool IsWordByte(char c) {
  return IsAsciiAlnum(c) || (static_cast<unsigned char>(c) >= 0x80);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string SentenceGroup::Text() const {
  std::string text;
  for (const auto &s : sentences) {
    if (!text.empty()) text += ' ';
    text += s;
  }
  return text;
}

DocumentLayout::DocumentLayout(std::vector<std::size_t> offsets)
    : offsets_(std::move(offsets)) {
  if (offsets_.empty() || offsets_.front() != 0 ||
      !std::is_sorted(offsets_.begin(), offsets_.end())) {
    throw Error(ErrorCode::kInvalidParameter,
                "document layout offsets must start at 0 and be sorted");
  }
}

DocumentLayout DocumentLayout::FromSizes(std::span<const std::size_t> sizes) {
  std::vector<std::size_t> offsets{0};
  offsets.reserve(sizes.size() + 1);
  for (std::size_t s : sizes) offsets.push_back(offsets.back() + s);
  return DocumentLayout(std::move(offsets));
}

std::size_t DocumentLayout::DocumentOf(std::size_t row) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), row);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

Corpus::Corpus(std::vector<Document> documents, std::size_t group_size)
    : documents_(std::move(documents)), group_size_(group_size) {
  std::vector<std::size_t> sizes;
  sizes.reserve(documents_.size());
  for (const auto &d : documents_) sizes.push_back(d.groups.size());
  layout_ = DocumentLayout::FromSizes(sizes);
}

const SentenceGroup &Corpus::GroupAt(std::size_t row) const {
  const std::size_t d = layout_.DocumentOf(row);
  return documents_[d].groups[row - layout_.begin(d)];
}

std::optional<std::size_t> Corpus::FindDocument(std::string_view id) const {
  for (std::size_t d = 0; d < documents_.size(); ++d) {
    if (documents_[d].id == id) return d;
  }
  return std::nullopt;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  const std::size_t n = text.size();
  auto flush = [&](std::size_t end) {
    std::string_view s = Trim(text.substr(start, end - start));
    if (!s.empty()) sentences.emplace_back(s);
  };

  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      flush(i);
      while (i < n && IsSpace(text[i])) ++i;
      start = i;
      continue;
    }
    if (!IsTerminator(c)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    bool periods_only = true;
    while (j < n && IsTerminator(text[j])) {
      periods_only = periods_only && text[j] == '.';
      ++j;
    }
    while (j < n && IsCloser(text[j])) ++j;
    if (j < n && !IsSpace(text[j])) {
      // Decimal point, abbreviation like "U.S." or a URL.
      i = j;
      continue;
    }
    if (periods_only) {
      std::size_t k = j;
      while (k < n && IsSpace(text[k]) && text[k] != '\n') ++k;
      if (k < n && IsLower(text[k])) {
        i = j;
        continue;
      }
    }
    flush(j);
    start = j;
    i = j;
  }
  flush(n);
  return sentences;
}

std::vector<SentenceGroup> GroupSentences(std::span<const std::string> sentences,
                                          int n_s, std::string_view doc_id) {
  if (n_s < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "group size n_s must be >= 1, got " + std::to_string(n_s));
  }
  const std::size_t size = static_cast<std::size_t>(n_s);
  std::vector<SentenceGroup> groups;
  groups.reserve((sentences.size() + size - 1) / size);
  for (std::size_t first = 0; first < sentences.size(); first += size) {
    SentenceGroup g;
    g.doc_id = std::string(doc_id);
    g.index = groups.size();
    const std::size_t last = std::min(sentences.size(), first + size);
    for (std::size_t s = first; s < last; ++s) {
      g.sentences.push_back(sentences[s]);
      for (auto &w : TokenizeWords(sentences[s])) g.words.push_back(std::move(w));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<std::string> TokenizeWords(std::string_view sentence) {
  std::vector<std::string> words;
  std::string current;
  for (char c : sentence) {
    if (IsWordByte(c)) {
      current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

Document MakeDocument(std::string id, std::string_view text,
                      std::optional<std::string> label, int n_s) {
  Document doc;
  const auto sentences = SplitSentences(text);
  doc.groups = GroupSentences(sentences, n_s, id);
  doc.id = std::move(id);
  doc.label = std::move(label);
  return doc;
}

LoadedCorpus ReadCorpus(std::istream &in, int n_s) {
  if (n_s < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "group size n_s must be >= 1, got " + std::to_string(n_s));
  }
  using nlohmann::json;
  std::vector<Document> documents;
  std::unordered_set<std::string> seen;
  LoadReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, where + "not a JSON object");
    }
    auto id = record.find("id");
    auto text = record.find("text");
    if (id == record.end() || !id->is_string()) {
      throw Error(ErrorCode::kMalformedRecord, where + "missing string field \"id\"");
    }
    if (text == record.end() || !text->is_string()) {
      throw Error(ErrorCode::kMalformedRecord, where + "missing string field \"text\"");
    }
    std::optional<std::string> label;
    if (auto l = record.find("label"); l != record.end() && !l->is_null()) {
      if (!l->is_string()) {
        throw Error(ErrorCode::kMalformedRecord, where + "\"label\" must be a string");
      }
      label = l->get<std::string>();
    }
    std::string doc_id = id->get<std::string>();
    if (!seen.insert(doc_id).second) {
      throw Error(ErrorCode::kDuplicateId, where + "duplicate id \"" + doc_id + "\"");
    }
    ++report.records;
    Document doc = MakeDocument(std::move(doc_id), text->get_ref<const std::string &>(),
                                std::move(label), n_s);
    if (doc.groups.empty()) {
      ++report.dropped;
      continue;
    }
    documents.push_back(std::move(doc));
  }
  return {Corpus(std::move(documents), static_cast<std::size_t>(n_s)), report};
}

LoadedCorpus LoadCorpus(const std::filesystem::path &path, int n_s) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open corpus file " + path.string());
  }
  return ReadCorpus(in, n_s);
}

}  // namespace bos
