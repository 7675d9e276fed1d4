// Copyright 2026 The Amrprobe Authors.
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


#include "amrprobe/amr/corpus.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "amrprobe/amr/penman.h"

namespace amrprobe {

namespace {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits "# ::a x ::b y" into key/value pairs. ::snt consumes the rest of
// the line since sentences may contain "::".
std::vector<std::pair<std::string, std::string>> ParseMetadataLine(
    std::string_view line) {
  std::vector<std::pair<std::string, std::string>> pairs;
  size_t pos = line.find("::");
  while (pos != std::string_view::npos) {
    size_t key_end = pos + 2;
    while (key_end < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[key_end]))) {
      ++key_end;
    }
    std::string key(line.substr(pos + 2, key_end - pos - 2));
    size_t next = std::string_view::npos;
    if (key != "snt") {
      next = line.find(" ::", key_end);
      if (next != std::string_view::npos) ++next;
    }
    size_t value_end = next == std::string_view::npos ? line.size() : next;
    pairs.push_back({key, Trim(line.substr(key_end, value_end - key_end))});
    pos = next;
  }
  return pairs;
}

}  // namespace

std::string CorpusEntry::Meta(std::string_view key) const {
  for (const auto &[k, v] : metadata) {
    if (k == key) return v;
  }
  return "";
}

std::vector<CorpusEntry> ReadCorpus(std::string_view text,
                                    const ReadCorpusOptions &options) {
  std::vector<std::vector<std::string>> blocks;
  std::vector<size_t> block_lines;
  {
    std::vector<std::string> current;
    size_t line_no = 0, start = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (Trim(line).empty()) {
        if (!current.empty()) {
          blocks.push_back(std::move(current));
          block_lines.push_back(start);
          current.clear();
        }
        continue;
      }
      if (current.empty()) start = line_no;
      current.push_back(line);
    }
    if (!current.empty()) {
      blocks.push_back(std::move(current));
      block_lines.push_back(start);
    }
  }

  std::vector<CorpusEntry> entries;
  std::unordered_set<std::string> ids;
  for (size_t b = 0; b < blocks.size(); ++b) {
    const std::vector<std::string> &lines = blocks[b];
    std::string where = " (block at line " + std::to_string(block_lines[b]) +
                        ")";
    CorpusEntry entry;
    bool has_metadata = false;
    std::string graph_text;
    for (const std::string &line : lines) {
      std::string trimmed = Trim(line);
      if (graph_text.empty() && trimmed[0] == '#') {
        if (trimmed.find("::") == std::string::npos) continue;
        has_metadata = true;
        for (auto &[key, value] : ParseMetadataLine(trimmed)) {
          if (key == "id") {
            entry.id = value;
          } else if (key == "snt") {
            entry.sentence = value;
          } else {
            entry.metadata.push_back({key, value});
          }
        }
      } else {
        graph_text += line;
        graph_text += '\n';
      }
    }
    if (!has_metadata && graph_text.empty()) {
      if (b == 0) continue;  // file header comment
      throw AmrError("block with neither metadata nor graph" + where);
    }
    if (entry.id.empty() && options.require_id) {
      throw AmrError("missing id" + where);
    }
    if (!entry.id.empty() && !ids.insert(entry.id).second) {
      throw AmrError("duplicate id " + entry.id + where);
    }
    if (!graph_text.empty()) {
      try {
        entry.graph = ParsePenman(graph_text);
      } catch (const AmrError &e) {
        if (!options.lenient) {
          throw AmrError(std::string(e.what()) + " in entry " + entry.id +
                         where);
        }
        entry.parse_error = e.what();
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> ReadCorpusFile(const std::string &path,
                                        const ReadCorpusOptions &options) {
  return ReadCorpus(ReadFile(path), options);
}

std::string WriteCorpus(const std::vector<CorpusEntry> &entries) {
  std::string out;
  for (size_t i = 0; i < entries.size(); ++i) {
    const CorpusEntry &e = entries[i];
    if (i > 0) out += '\n';
    out += "# ::id " + e.id + "\n";
    if (!e.sentence.empty()) out += "# ::snt " + e.sentence + "\n";
    for (const auto &[k, v] : e.metadata) out += "# ::" + k + " " + v + "\n";
    if (e.graph) out += SerializePenman(*e.graph, PenmanStyle::kIndented);
    out += '\n';
  }
  return out;
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AmrError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileAtomic(const std::string &path, std::string_view contents) {
  std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw AmrError("cannot write " + temp);
    out.write(contents.data(), contents.size());
    if (!out) throw AmrError("short write to " + temp);
  }
  std::filesystem::rename(temp, target);
}

}  // namespace amrprobe
