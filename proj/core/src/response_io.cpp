#include "maturity/response_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "maturity/errors.hpp"

namespace maturity {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// nlohmann keeps the last value for a repeated key, which would silently
// drop answers; reject duplicates during the parse instead.
json parse_rejecting_duplicate_keys(std::string_view text) {
  std::vector<std::set<std::string>> key_stack;
  json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event,
                                   json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        key_stack.emplace_back();
        break;
      case json::parse_event_t::object_end:
        key_stack.pop_back();
        break;
      case json::parse_event_t::key: {
        auto key = parsed.get<std::string>();
        if (!key_stack.back().insert(key).second)
          throw Error(ErrorKind::schema,
                      fmt::format("duplicate key \"{}\"", key));
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, fmt::format("invalid JSON: {}", e.what()));
  }
}

QuestionId parse_answer_key(const std::string& key) {
  try {
    return parse_question_id(key);
  } catch (const Error& e) {
    throw Error(ErrorKind::schema,
                fmt::format("$.answers: {}", e.what()));
  }
}

}  // namespace

ResponseSet load_response_json(std::string_view json_text) {
  json doc = parse_rejecting_duplicate_keys(json_text);
  if (!doc.is_object())
    throw Error(ErrorKind::schema, "$: expected an object");

  ResponseSet r;
  for (auto& [key, value] : doc.items()) {
    if (key == "organization" || key == "respondent" || key == "note") {
      if (!value.is_string())
        throw Error(ErrorKind::schema, fmt::format("$.{}: expected a string", key));
      if (key == "organization") r.organization = value.get<std::string>();
      if (key == "respondent") r.respondent = value.get<std::string>();
      if (key == "note") r.note = value.get<std::string>();
    } else if (key == "encoding") {
      if (!value.is_string())
        throw Error(ErrorKind::schema, "$.encoding: expected a string");
      auto enc = encoding_from_name(value.get<std::string>());
      if (!enc)
        throw Error(ErrorKind::schema,
                    fmt::format("$.encoding: unknown encoding \"{}\"",
                                value.get<std::string>()));
      r.encoding = *enc;
    } else if (key == "answers") {
      if (!value.is_object())
        throw Error(ErrorKind::schema, "$.answers: expected an object");
      for (auto& [qkey, raw] : value.items()) {
        QuestionId id = parse_answer_key(qkey);
        if (raw.is_null()) continue;  // explicit blank
        if (!raw.is_number())
          throw Error(ErrorKind::schema,
                      fmt::format("$.answers.{}: expected a number or null", qkey));
        r.answers.emplace(id, Answer{id, raw.get<double>()});
      }
    } else {
      throw Error(ErrorKind::schema, fmt::format("$: unexpected field \"{}\"", key));
    }
  }
  if (!doc.contains("organization"))
    throw Error(ErrorKind::schema, "$.organization: missing field");
  if (!doc.contains("answers"))
    throw Error(ErrorKind::schema, "$.answers: missing field");
  return r;
}

std::string save_response_json(const ResponseSet& r) {
  ordered_json doc;
  doc["organization"] = r.organization;
  doc["respondent"] = r.respondent;
  doc["encoding"] = encoding_name(r.encoding);
  if (!r.note.empty()) doc["note"] = r.note;

  std::vector<QuestionId> ids;
  for (const auto& [id, answer] : r.answers)
    if (!answer.blank()) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), canonical_less);

  ordered_json answers = ordered_json::object();
  for (const auto& id : ids) {
    double raw = *r.answers.at(id).raw;
    if (raw == std::floor(raw))
      answers[id.str()] = static_cast<std::int64_t>(raw);
    else
      answers[id.str()] = raw;
  }
  doc["answers"] = std::move(answers);
  return doc.dump(2) + "\n";
}

ResponseSet load_response_csv(std::string_view csv_text, std::string organization,
                              std::string respondent, Encoding encoding) {
  auto rows = csv::parse(csv_text);
  if (rows.empty())
    throw Error(ErrorKind::schema, "empty CSV document");
  if (rows.front().size() != 2 || rows.front()[0] != "question_id" ||
      rows.front()[1] != "answer")
    throw Error(ErrorKind::schema, "expected header \"question_id,answer\"");

  ResponseSet r;
  r.organization = std::move(organization);
  r.respondent = std::move(respondent);
  r.encoding = encoding;

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 2)
      throw Error(ErrorKind::schema,
                  fmt::format("row {}: expected 2 fields, found {}", i + 1, row.size()));
    QuestionId id;
    try {
      id = parse_question_id(row[0]);
    } catch (const Error& e) {
      throw Error(ErrorKind::schema, fmt::format("row {}: {}", i + 1, e.what()));
    }
    if (r.answers.contains(id))
      throw Error(ErrorKind::schema,
                  fmt::format("row {}: duplicate question id {}", i + 1, id.str()));
    if (row[1].empty()) continue;  // blank cell = blank answer
    double raw = 0;
    try {
      std::size_t used = 0;
      raw = std::stod(row[1], &used);
      if (used != row[1].size()) throw std::invalid_argument(row[1]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::schema,
                  fmt::format("row {}: \"{}\" is not a number", i + 1, row[1]));
    }
    r.answers.emplace(id, Answer{id, raw});
  }
  return r;
}

ResponseSet load_response_file(const std::string& path,
                               const std::string& csv_organization,
                               const std::string& csv_respondent,
                               Encoding csv_encoding) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, fmt::format("cannot read \"{}\"", path));
  std::ostringstream buf;
  buf << in.rdbuf();

  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return load_response_csv(buf.str(), csv_organization, csv_respondent,
                             csv_encoding);
  return load_response_json(buf.str());
}

}  // namespace maturity
