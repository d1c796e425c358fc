#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selkey/utf8.hpp"

namespace selkey {

/// Raised when a corpus file, stopword list, lemma table or gold file cannot
/// be read or parsed. The message always names the offending path.
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

struct Token {
  std::string surface;
  std::string normalized;
  std::size_t position = 0;
  std::size_t sentence_index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<Token> tokens;
  std::filesystem::path source_path;
};

struct TokenizeOptions {
  // Treat the first line of the text as a sentence of its own even when it
  // carries no terminator (news titles).
  bool title_sentence = false;
};

namespace detail {

inline bool is_terminator(char32_t cp) { return cp == '.' || cp == '?' || cp == '!'; }

inline bool is_closing_mark(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x00BB ||
         cp == 0x201D || cp == 0x2019;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw LoadError(path, "read failed");
  return std::move(buf).str();
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no++);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

inline bool contains_space(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size())
    if (utf8::is_space(utf8::decode(s, pos))) return true;
  return false;
}

}  // namespace detail

/// Splits raw text into word tokens. A token is a maximal run of letters and
/// digits; everything else separates tokens and is dropped. A sentence ends
/// at `.`, `?` or `!` followed (possibly after closing quotes or brackets) by
/// whitespace or the end of input. Sentence numbers only advance when another
/// token follows, so no sentence is empty.
inline std::vector<Token> tokenize(std::string_view raw, TokenizeOptions options = {}) {
  std::vector<Token> tokens;
  std::string word;
  std::size_t sentence = 0;
  bool pending_break = false;
  bool title_open = options.title_sentence;

  const auto flush = [&] {
    if (word.empty()) return;
    if (pending_break && !tokens.empty()) ++sentence;
    pending_break = false;
    Token tok;
    tok.normalized = utf8::to_lower(word);
    tok.surface = std::move(word);
    tok.position = tokens.size();
    tok.sentence_index = sentence;
    tokens.push_back(std::move(tok));
    word.clear();
  };

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::decode(raw, pos);
    if (utf8::is_word_char(cp)) {
      word.append(raw.substr(start, pos - start));
      continue;
    }
    flush();
    if (cp == '\n' && title_open && !tokens.empty()) {
      pending_break = true;
      title_open = false;
    } else if (detail::is_terminator(cp)) {
      std::size_t look = pos;
      char32_t next = 0;
      bool at_end = true;
      while (look < raw.size()) {
        next = utf8::decode(raw, look);
        if (!detail::is_closing_mark(next)) {
          at_end = false;
          break;
        }
      }
      if (at_end || utf8::is_space(next)) pending_break = true;
    }
  }
  flush();
  return tokens;
}

inline Document make_document(std::string doc_id, std::string_view raw,
                              TokenizeOptions options = {}) {
  return Document{std::move(doc_id), tokenize(raw, options), {}};
}

/// Reads one corpus file; the document id is the file stem.
inline Document load_document(const std::filesystem::path& path,
                              TokenizeOptions options = {.title_sentence = true}) {
  Document doc = make_document(path.stem().string(), detail::read_file(path), options);
  doc.source_path = path;
  return doc;
}

/// Regular, non-hidden files of a corpus directory in lexicographic order.
inline std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw LoadError(dir, "not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (entry.is_regular_file(ec) || entry.is_symlink(ec)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

/// Lowercased surface form -> lemma. Lookup of an unmapped form returns the
/// form itself.
class LemmaTable {
 public:
  LemmaTable() = default;
  LemmaTable(std::initializer_list<std::pair<std::string, std::string>> pairs) {
    for (const auto& [surface, lemma] : pairs) insert(surface, lemma);
  }

  void insert(std::string_view surface, std::string_view lemma) {
    table_[utf8::to_lower(surface)] = utf8::to_lower(lemma);
  }

  std::string lookup(std::string_view lowered_surface) const {
    const auto it = table_.find(std::string(lowered_surface));
    return it == table_.end() ? std::string(lowered_surface) : it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }
  bool empty() const noexcept { return table_.empty(); }

 private:
  std::unordered_map<std::string, std::string> table_;
};

/// Parses `surface<TAB>lemma` lines. Blank lines and `#` comments are skipped.
inline LemmaTable load_lemma_table(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  LemmaTable table;
  detail::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto trimmed = utf8::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') return;
    const auto tab = line.find('\t');
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (tab == std::string_view::npos) throw LoadError(path, where + "expected surface<TAB>lemma");
    const auto surface = utf8::trim(line.substr(0, tab));
    const auto lemma = utf8::trim(line.substr(tab + 1));
    if (surface.empty() || lemma.empty()) throw LoadError(path, where + "empty field");
    if (detail::contains_space(lemma) || detail::contains_space(surface))
      throw LoadError(path, where + "whitespace inside a word");
    table.insert(surface, lemma);
  });
  return table;
}

inline Document apply_lemmas(Document doc, const LemmaTable& table) {
  if (table.empty()) return doc;
  for (auto& tok : doc.tokens) tok.normalized = table.lookup(utf8::to_lower(tok.surface));
  return doc;
}

class StopwordList {
 public:
  StopwordList() = default;
  StopwordList(std::initializer_list<std::string_view> words) {
    for (const auto w : words) insert(w);
  }

  void insert(std::string_view word) {
    const auto trimmed = utf8::trim(word);
    if (!trimmed.empty()) entries_.insert(utf8::to_lower(trimmed));
  }

  bool contains(std::string_view normalized) const {
    return entries_.find(std::string(normalized)) != entries_.end();
  }

  /// Adds the lemma of every entry so that checks against lemma-mapped
  /// tokens still hit ("je" -> "biti").
  StopwordList with_lemmas(const LemmaTable& table) const {
    StopwordList out = *this;
    for (const auto& w : entries_) out.entries_.insert(table.lookup(w));
    return out;
  }

  const std::set<std::string>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::set<std::string> entries_;
};

inline StopwordList load_stopwords(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  StopwordList list;
  detail::for_each_line(text, [&](std::string_view line, std::size_t) {
    const auto trimmed = utf8::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') return;
    list.insert(trimmed);
  });
  return list;
}

}  // namespace selkey
