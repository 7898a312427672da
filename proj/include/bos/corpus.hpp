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

#ifndef BOS_CORPUS_HPP_
#define BOS_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bos {

// n_s consecutive sentences of one document; the unit that gets embedded and
// assigned to a topic.
struct SentenceGroup {
  std::string doc_id;
  std::size_t index = 0;
  std::vector<std::string> sentences;
  std::vector<std::string> words;

  // Sentences joined by single spaces. This is what embedding providers see.
  std::string Text() const;
};

struct Document {
  std::string id;
  std::optional<std::string> label;
  std::vector<SentenceGroup> groups;
};

// Row offsets of each document's groups in the global group enumeration:
// document d owns rows [offsets[d], offsets[d + 1]). Always holds D + 1
// entries, starting at 0.
class DocumentLayout {
 public:
  DocumentLayout() : offsets_{0} {}
  explicit DocumentLayout(std::vector<std::size_t> offsets);

  // Convenience constructor from per-document group counts.
  static DocumentLayout FromSizes(std::span<const std::size_t> sizes);

  std::size_t documents() const { return offsets_.size() - 1; }
  std::size_t groups() const { return offsets_.back(); }
  std::size_t begin(std::size_t doc) const { return offsets_[doc]; }
  std::size_t end(std::size_t doc) const { return offsets_[doc + 1]; }
  std::size_t size(std::size_t doc) const { return end(doc) - begin(doc); }
  // Document owning a global row.
  std::size_t DocumentOf(std::size_t row) const;

  const std::vector<std::size_t> &offsets() const { return offsets_; }

 private:
  std::vector<std::size_t> offsets_;
};

// Immutable collection of documents with a bijective (document, group) <->
// row enumeration. Documents are kept in input order and rows are assigned
// document by document.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<Document> documents, std::size_t group_size);

  const std::vector<Document> &documents() const { return documents_; }
  const Document &document(std::size_t d) const { return documents_[d]; }
  std::size_t document_count() const { return documents_.size(); }
  std::size_t group_count() const { return layout_.groups(); }
  std::size_t group_size() const { return group_size_; }
  const DocumentLayout &layout() const { return layout_; }

  std::size_t Row(std::size_t doc, std::size_t group) const {
    return layout_.begin(doc) + group;
  }
  const SentenceGroup &GroupAt(std::size_t row) const;
  std::optional<std::size_t> FindDocument(std::string_view id) const;

 private:
  std::vector<Document> documents_;
  std::size_t group_size_ = 1;
  DocumentLayout layout_;
};

struct LoadReport {
  std::size_t records = 0;
  std::size_t dropped = 0;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

// Splits running text into sentences. A sentence ends at a run of '.', '!'
// or '?' (plus any closing quotes or brackets) that is followed by
// whitespace or the end of the text, and at every run of newlines. A run of
// periods followed by a lowercase letter does not end a sentence, and a
// period between two digits never does. Sentences are trimmed.
std::vector<std::string> SplitSentences(std::string_view text);

// Partitions sentences into consecutive groups of n_s; the last group may be
// shorter. Throws kInvalidParameter when n_s < 1.
std::vector<SentenceGroup> GroupSentences(std::span<const std::string> sentences,
                                          int n_s,
                                          std::string_view doc_id = {});

// Lowercased alphanumeric runs. Bytes >= 0x80 count as word characters so
// UTF-8 words survive intact.
std::vector<std::string> TokenizeWords(std::string_view sentence);

// split -> group -> tokenize for one document.
Document MakeDocument(std::string id, std::string_view text,
                      std::optional<std::string> label, int n_s);

// Reads line-delimited JSON records {"id", "text", "label"?}. Blank lines are
// skipped; records whose text has no sentences are dropped and counted.
LoadedCorpus ReadCorpus(std::istream &in, int n_s);
LoadedCorpus LoadCorpus(const std::filesystem::path &path, int n_s);

}  // namespace bos

#endif  // BOS_CORPUS_HPP_
