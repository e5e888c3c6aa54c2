// Copyright 2026 The aerofetch Authors
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

#include "aerofetch/task_grammar.hpp"

#include "aerofetch/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <optional>

namespace aerofetch
{
namespace
{

struct Token
{
  std::string text;
  std::size_t position;
};

bool is_skipped(const std::string & w)
{
  return w == "the" || w == "a" || w == "an" || w == "please";
}

std::vector<Token> tokenize(std::string_view text)
{
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (!std::isalnum(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::string word;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
      ++i;
    }
    if (!is_skipped(word)) {
      tokens.push_back({std::move(word), start});
    }
  }
  return tokens;
}

class Parser
{
public:
  Parser(std::string_view text, const Vocabulary & vocab)
  : tokens_(tokenize(text)), end_position_(text.size()), vocab_(vocab)
  {
  }

  TaskQueue parse()
  {
    if (tokens_.empty()) {
      throw ParseError("empty command: expected an object to fetch", 0);
    }
    TaskQueue queue;
    while (true) {
      Task task;
      task.descriptor = parse_command();
      task.priority = static_cast<int>(queue.size());
      queue.push_back(std::move(task));
      if (at_end()) {
        break;
      }
      if (peek_is("then")) {
        ++pos_;
      } else if (peek_is("and") && peek_is("then", 1)) {
        pos_ += 2;
      } else {
        throw ParseError(
          fmt::format("expected 'then' between commands, found '{}'", tokens_[pos_].text),
          position());
      }
      if (at_end()) {
        throw ParseError("expected a command after 'then'", end_position_);
      }
    }
    return queue;
  }

private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  bool peek_is(std::string_view word, std::size_t ahead = 0) const
  {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].text == word;
  }

  std::size_t position() const { return at_end() ? end_position_ : tokens_[pos_].position; }

  void expect(std::string_view word, std::string_view context)
  {
    if (!peek_is(word)) {
      const std::string found = at_end() ? "end of prompt" : "'" + tokens_[pos_].text + "'";
      throw ParseError(fmt::format("expected '{}' {}, found {}", word, context, found), position());
    }
    ++pos_;
  }

  static bool is_boundary(const std::string & w) { return w == "then" || w == "and" || w == "to"; }

  static bool is_single_verb(const std::string & w)
  {
    return w == "bring" || w == "fetch" || w == "grab" || w == "get";
  }

  ObjectDescriptor parse_command()
  {
    if (peek_is("pick")) {
      ++pos_;
      expect("up", "after 'pick'");
    } else if (!at_end() && is_single_verb(tokens_[pos_].text)) {
      ++pos_;
      // "bring me the mug"
      if (peek_is("me")) {
        ++pos_;
      }
    }

    std::vector<Token> phrase;
    while (!at_end() && !is_boundary(tokens_[pos_].text)) {
      phrase.push_back(tokens_[pos_]);
      ++pos_;
    }
    if (phrase.empty()) {
      throw ParseError("expected an object noun", position());
    }

    const Token & noun = phrase.back();
    if (!vocab_.nouns.contains(noun.text)) {
      throw UnknownObjectError(noun.text, noun.position);
    }

    ObjectDescriptor descriptor;
    descriptor.noun = noun.text;
    for (std::size_t k = 0; k + 1 < phrase.size(); ++k) {
      const Token & adj = phrase[k];
      if (!vocab_.adjectives.contains(adj.text)) {
        if (vocab_.nouns.contains(adj.text)) {
          throw ParseError(
            fmt::format("'{}' is an object, expected a single noun per command", adj.text),
            adj.position);
        }
        throw ParseError(fmt::format("unknown modifier '{}'", adj.text), adj.position);
      }
      if (std::find(descriptor.attributes.begin(), descriptor.attributes.end(), adj.text) ==
          descriptor.attributes.end()) {
        descriptor.attributes.push_back(adj.text);
      }
    }

    parse_delivery();
    return descriptor;
  }

  void parse_delivery()
  {
    if (peek_is("and") && (peek_is("bring", 1) || peek_is("give", 1))) {
      pos_ += 2;
      expect("it", "in delivery clause");
      expect("to", "in delivery clause");
      expect("me", "in delivery clause");
    } else if (peek_is("to")) {
      ++pos_;
      expect("me", "after 'to'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t end_position_;
  const Vocabulary & vocab_;
  std::size_t pos_{0};
};

}  // namespace

Vocabulary Vocabulary::from_scene(const Scene & scene)
{
  Vocabulary v;
  for (const auto & obj : scene.objects) {
    v.nouns.insert(obj.noun);
    v.adjectives.insert(obj.attributes.begin(), obj.attributes.end());
  }
  return v;
}

TaskQueue parse_prompt(std::string_view text, const Vocabulary & vocabulary)
{
  return Parser(text, vocabulary).parse();
}

bool label_matches(const ObjectDescriptor & descriptor, const DetectionLabel & label)
{
  if (label.noun != descriptor.noun) {
    return false;
  }
  return std::all_of(
    descriptor.attributes.begin(), descriptor.attributes.end(),
    [&](const std::string & a) { return label.attributes.contains(a); });
}

GroundedTarget ground_task(
  const Task & task, std::span<const LocalizedDetection> detections, const Vec3 & drone_position)
{
  std::optional<std::size_t> best;
  double best_dist = 0.0;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    const auto & d = detections[i];
    if (!label_matches(task.descriptor, d.detection.label)) {
      continue;
    }
    const double dist = distance(d.world, drone_position);
    if (!best) {
      best = i;
      best_dist = dist;
      continue;
    }
    const double best_conf = detections[*best].detection.confidence;
    if (d.detection.confidence > best_conf ||
        (d.detection.confidence == best_conf && dist < best_dist)) {
      best = i;
      best_dist = dist;
    }
  }
  if (!best) {
    throw ObjectNotFoundError("no detection matches '" + describe(task.descriptor) + "'");
  }
  return {detections[*best].world, detections[*best].detection};
}

std::string describe(const ObjectDescriptor & descriptor)
{
  std::string out;
  for (const auto & a : descriptor.attributes) {
    out += a;
    out += ' ';
  }
  return out + descriptor.noun;
}

}  // namespace aerofetch
