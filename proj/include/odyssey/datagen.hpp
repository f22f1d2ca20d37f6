#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <odyssey/chat.hpp>
#include <odyssey/prompts.hpp>

namespace odyssey {

struct SectionTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoPairsFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoQuestionsFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- corpus chunking ------------------------------------------------------------

struct Section {
    std::string heading;
    std::string body;
};

struct CorpusChunk {
    std::string source_id;
    std::vector<Section> sections;
    int word_count = 0;

    std::string text() const {
        std::string out;
        for (const auto& s : sections) {
            if (!s.heading.empty()) out += s.heading + "\n";
            out += s.body + "\n";
        }
        return out;
    }
};

inline int count_words(const std::string& text) {
    std::istringstream in(text);
    std::string w;
    int n = 0;
    while (in >> w) ++n;
    return n;
}

// Splits a markdown document into (heading, body) sections; text before the
// first heading becomes a preamble section with an empty heading.
inline std::vector<Section> parse_sections(const std::string& markdown) {
    std::vector<Section> sections;
    Section cur;
    std::istringstream in(markdown);
    std::string line;
    bool any = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            if (any || !cur.body.empty()) sections.push_back(cur);
            cur = Section{line, ""};
            any = true;
        } else {
            cur.body += line + "\n";
        }
    }
    if (any || !cur.body.empty()) sections.push_back(cur);
    return sections;
}

// Greedy packing of consecutive sections; sections are never split.
inline std::vector<CorpusChunk> chunk_corpus(const std::string& source_id,
                                             const std::vector<Section>& sections,
                                             int word_limit) {
    if (word_limit < 1) throw std::invalid_argument("word limit must be positive");
    std::vector<CorpusChunk> chunks;
    CorpusChunk cur;
    cur.source_id = source_id;
    for (const auto& s : sections) {
        int words = count_words(s.heading) + count_words(s.body);
        if (words > word_limit)
            throw SectionTooLarge("section exceeds the word limit: " +
                                  (s.heading.empty() ? std::string("(preamble)") : s.heading));
        if (cur.word_count + words > word_limit && !cur.sections.empty()) {
            chunks.push_back(cur);
            cur = CorpusChunk{source_id, {}, 0};
        }
        cur.sections.push_back(s);
        cur.word_count += words;
    }
    if (!cur.sections.empty()) chunks.push_back(cur);
    return chunks;
}

// ---- Q&A pair parsing --------------------------------------------------------------

struct QAPair {
    std::string prompt;
    std::string response;
    QAType qa_type = QAType::normal_answer;
};

struct QAParseResult {
    std::vector<QAPair> pairs;
    int dropped_incomplete = 0;
};

inline std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool is_dashed_delimiter(const std::string& line) {
    std::string t = trim_copy(line);
    if (t.size() < 3) return false;
    return t.find_first_not_of('-') == std::string::npos;
}

// Splits on the dashed delimiter lines of the generation format. A segment
// ending in the marker word "prompt"/"response" labels the following segment;
// trailing blocks missing either half are dropped and counted.
inline QAParseResult parse_generation_response(const std::string& raw, QAType type) {
    std::vector<std::string> segments;
    std::string cur;
    std::istringstream in(raw);
    std::string line;
    bool any_delim = false;
    while (std::getline(in, line)) {
        if (is_dashed_delimiter(line)) {
            segments.push_back(cur);
            cur.clear();
            any_delim = true;
        } else {
            cur += line + "\n";
        }
    }
    segments.push_back(cur);
    if (!any_delim) throw NoPairsFound("no delimiter lines in generation response");

    auto ends_with_marker = [](const std::string& seg, const std::string& marker) {
        std::string t = trim_copy(seg);
        // tolerate code fences around the marker word
        while (t.size() >= 3 && t.compare(t.size() - 3, 3, "```") == 0)
            t = trim_copy(t.substr(0, t.size() - 3));
        if (t.size() < marker.size()) return false;
        if (t.compare(t.size() - marker.size(), marker.size(), marker) != 0) return false;
        return t.size() == marker.size() ||
               std::isspace(static_cast<unsigned char>(t[t.size() - marker.size() - 1])) != 0;
    };

    QAParseResult out;
    std::optional<std::string> pending_prompt;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        if (ends_with_marker(segments[i], "prompt")) {
            if (pending_prompt) ++out.dropped_incomplete;  // prompt without response
            pending_prompt = trim_copy(segments[i + 1]);
        } else if (ends_with_marker(segments[i], "response")) {
            if (pending_prompt) {
                std::string response = trim_copy(segments[i + 1]);
                if (!pending_prompt->empty() && !response.empty())
                    out.pairs.push_back({*pending_prompt, response, type});
                else
                    ++out.dropped_incomplete;
                pending_prompt.reset();
            } else {
                ++out.dropped_incomplete;  // response without prompt
            }
        }
    }
    if (pending_prompt) ++out.dropped_incomplete;
    if (out.pairs.empty()) throw NoPairsFound("no complete prompt/response blocks found");
    return out;
}

inline std::vector<QAPair> dedup_pairs(const std::vector<QAPair>& pairs) {
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<QAPair> out;
    for (const auto& p : pairs)
        if (seen.insert({p.prompt, p.response}).second) out.push_back(p);
    return out;
}

inline void write_pairs_jsonl(std::ostream& os, const std::vector<QAPair>& pairs) {
    for (const auto& p : pairs) {
        json j = {{"prompt", p.prompt}, {"response", p.response}, {"type", qa_type_name(p.qa_type)}};
        os << j.dump() << "\n";
    }
}

// ---- MCQ parsing ---------------------------------------------------------------

struct MCQ {
    std::string difficulty;  // Easy / Medium / Hard
    std::string topic;       // optional
    std::string keyword;
    std::string question;
    std::vector<std::string> options;  // exactly 4, labels stripped
    char correct = '?';                // 'A'..'D'
};

struct McqParseResult {
    std::vector<MCQ> questions;
    std::vector<std::string> rejected;  // reasons for dropped records
};

namespace detail {

inline std::optional<std::string> field_after(const std::string& line, const std::string& key) {
    std::string t = trim_copy(line);
    if (t.compare(0, key.size(), key) != 0) return std::nullopt;
    std::string rest = trim_copy(t.substr(key.size()));
    if (!rest.empty() && rest[0] == ':') rest = trim_copy(rest.substr(1));
    return rest;
}

// Splits "A. x B. y C. z D. w" on the option labels; multi-line options
// arrive as one line each and are handled by the caller.
inline std::vector<std::string> split_inline_options(const std::string& text) {
    std::vector<std::string> out;
    std::vector<std::size_t> starts;
    for (char label = 'A'; label <= 'D'; ++label) {
        std::size_t pos = std::string::npos;
        for (std::size_t i = 0; i + 1 < text.size(); ++i) {
            if (text[i] != label || text[i + 1] != '.') continue;
            if (i > 0 && !std::isspace(static_cast<unsigned char>(text[i - 1]))) continue;
            if (!starts.empty() && i <= starts.back()) continue;
            pos = i;
            break;
        }
        if (pos == std::string::npos) return {};
        starts.push_back(pos);
    }
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t begin = starts[k] + 2;
        std::size_t end = k + 1 < 4 ? starts[k + 1] : text.size();
        out.push_back(trim_copy(text.substr(begin, end - begin)));
    }
    return out;
}

}  // namespace detail

inline McqParseResult parse_mcq(const std::string& raw) {
    McqParseResult out;
    std::vector<std::string> lines;
    {
        std::istringstream in(raw);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
    }

    // Records start at "Difficulty:" lines.
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (detail::field_after(lines[i], "Difficulty")) starts.push_back(i);
    if (starts.empty()) throw NoQuestionsFound("no Difficulty records found");

    for (std::size_t r = 0; r < starts.size(); ++r) {
        std::size_t begin = starts[r];
        std::size_t end = r + 1 < starts.size() ? starts[r + 1] : lines.size();
        MCQ q;
        q.difficulty = trim_copy(*detail::field_after(lines[begin], "Difficulty"));
        std::string reject;
        for (std::size_t i = begin + 1; i < end && reject.empty(); ++i) {
            const std::string& line = lines[i];
            if (auto v = detail::field_after(line, "Topic")) {
                q.topic = *v;
            } else if (auto v = detail::field_after(line, "Key Word")) {
                q.keyword = *v;
            } else if (auto v = detail::field_after(line, "Question")) {
                q.question = *v;
            } else if (auto v = detail::field_after(line, "Correct Answer")) {
                std::string ans = trim_copy(*v);
                if (ans.size() == 1 && ans[0] >= 'A' && ans[0] <= 'D')
                    q.correct = ans[0];
                else
                    reject = "unrecognized correct answer: " + ans;
            } else if (auto v = detail::field_after(line, "Options")) {
                if (!v->empty()) {
                    q.options = detail::split_inline_options(*v);
                } else {
                    // multi-line options: following lines "A. ...".."D. ..."
                    for (std::size_t j = i + 1; j < end && q.options.size() < 4; ++j) {
                        std::string t = trim_copy(lines[j]);
                        if (t.empty()) continue;
                        char want = static_cast<char>('A' + q.options.size());
                        if (t.size() >= 2 && t[0] == want && t[1] == '.')
                            q.options.push_back(trim_copy(t.substr(2)));
                        else
                            break;
                    }
                }
            }
        }
        if (reject.empty()) {
            if (q.difficulty != "Easy" && q.difficulty != "Medium" && q.difficulty != "Hard")
                reject = "unrecognized difficulty: " + q.difficulty;
            else if (q.keyword.empty())
                reject = "missing Key Word";
            else if (q.question.empty())
                reject = "missing Question";
            else if (q.options.size() != 4)
                reject = "expected 4 options, got " + std::to_string(q.options.size());
            else if (q.correct == '?')
                reject = "missing Correct Answer";
        }
        if (reject.empty())
            out.questions.push_back(q);
        else
            out.rejected.push_back(reject);
    }
    if (out.questions.empty()) throw NoQuestionsFound("no complete MCQ records found");
    return out;
}

// ---- MCQ scoring ---------------------------------------------------------------

// First standalone A-D token, case-insensitive; anything else is unparseable.
inline std::optional<char> extract_answer_letter(const std::string& reply) {
    for (std::size_t i = 0; i < reply.size(); ++i) {
        char c = static_cast<char>(std::toupper(static_cast<unsigned char>(reply[i])));
        if (c < 'A' || c > 'D') continue;
        bool left_ok =
            i == 0 || !std::isalnum(static_cast<unsigned char>(reply[i - 1]));
        bool right_ok =
            i + 1 == reply.size() || !std::isalnum(static_cast<unsigned char>(reply[i + 1]));
        if (left_ok && right_ok) return c;
    }
    return std::nullopt;
}

struct McqScore {
    std::vector<double> per_trial;
    double mean = 0;
};

inline McqScore score_mcq(const std::vector<MCQ>& questions, LLMBackend& backend, int trials) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (questions.empty()) throw std::invalid_argument("no questions to score");
    McqScore score;
    for (int t = 0; t < trials; ++t) {
        int correct = 0;
        for (const auto& q : questions) {
            std::string options;
            for (std::size_t i = 0; i < q.options.size(); ++i)
                options += std::string(1, char('A' + i)) + ". " + q.options[i] + "\n";
            std::vector<ChatMessage> messages = {
                {Role::system,
                 "You are a Minecraft expert answering multiple-choice questions. Reply with "
                 "a single letter: A, B, C, or D."},
                {Role::user, "Question: " + q.question + "\n" + options + "Answer:"}};
            std::string reply = backend.complete(messages);
            auto letter = extract_answer_letter(reply);
            if (letter && *letter == q.correct) ++correct;  // unparseable counts wrong
        }
        score.per_trial.push_back(double(correct) / double(questions.size()));
    }
    for (double a : score.per_trial) score.mean += a;
    score.mean /= double(trials);
    return score;
}

}  // namespace odyssey
