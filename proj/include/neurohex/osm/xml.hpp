#pragma once

// Minimal pull parser for the XML subset that OSM extracts use: nested
// elements with attributes, self-closing tags, comments, processing
// instructions, and the five predefined entities plus numeric character
// references in attribute values. Text content between tags is skipped
// (OSM data lives entirely in attributes). Anything outside that subset
// raises ErrorKind::xml_syntax with a byte offset.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "neurohex/error.hpp"

namespace neurohex::osm {

struct XmlAttribute {
  std::string name;
  std::string value;
};

struct XmlEvent {
  enum class Kind { open, close };
  Kind kind = Kind::open;
  std::string name;
  std::vector<XmlAttribute> attrs;  // open events only
  bool self_closing = false;        // open events only
};

class XmlParser {
 public:
  explicit XmlParser(std::string_view text) : text_(text) {}

  // Fills `ev` with the next open or close event. Self-closing tags are
  // reported as a single open event with self_closing set; no matching
  // close event follows. Returns false at end of input.
  bool next(XmlEvent& ev) {
    // A self-closing open event owes its close bookkeeping here.
    if (pending_pop_) {
      stack_.pop_back();
      pending_pop_ = false;
    }
    for (;;) {
      skip_text();
      if (pos_ >= text_.size()) {
        if (!stack_.empty()) {
          fail(ErrorKind::xml_syntax,
               "unexpected end of input, <" + stack_.back() + "> not closed");
        }
        return false;
      }
      // pos_ sits on '<'
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      if (starts_with("<?")) {
        skip_until("?>", "unterminated processing instruction");
        continue;
      }
      if (starts_with("<!")) {
        skip_until(">", "unterminated declaration");
        continue;
      }
      if (starts_with("</")) {
        parse_close(ev);
        return true;
      }
      parse_open(ev);
      return true;
    }
  }

  size_t offset() const { return pos_; }

 private:
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).substr(0, s.size()) == s;
  }

  [[noreturn]] void syntax_error(const std::string& what) const {
    fail(ErrorKind::xml_syntax, what + " at byte " + std::to_string(pos_));
  }

  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  static bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-' || c == ':' ||
           c == '.';
  }

  void skip_text() {
    while (pos_ < text_.size() && text_[pos_] != '<') {
      ++pos_;
    }
  }

  void skip_comment() {
    const size_t end = text_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) {
      syntax_error("unterminated comment");
    }
    pos_ = end + 3;
  }

  void skip_until(std::string_view terminator, const char* what) {
    const size_t end = text_.find(terminator, pos_);
    if (end == std::string_view::npos) {
      syntax_error(what);
    }
    pos_ = end + terminator.size();
  }

  void skip_spaces() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      ++pos_;
    }
  }

  std::string parse_name() {
    const size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      ++pos_;
    }
    if (pos_ == start) {
      syntax_error("expected name");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_close(XmlEvent& ev) {
    pos_ += 2;  // "</"
    ev.kind = XmlEvent::Kind::close;
    ev.name = parse_name();
    ev.attrs.clear();
    ev.self_closing = false;
    skip_spaces();
    if (pos_ >= text_.size() || text_[pos_] != '>') {
      syntax_error("malformed closing tag");
    }
    ++pos_;
    if (stack_.empty() || stack_.back() != ev.name) {
      syntax_error("mismatched </" + ev.name + ">");
    }
    stack_.pop_back();
  }

  void parse_open(XmlEvent& ev) {
    ++pos_;  // '<'
    ev.kind = XmlEvent::Kind::open;
    ev.name = parse_name();
    ev.attrs.clear();
    ev.self_closing = false;
    for (;;) {
      skip_spaces();
      if (pos_ >= text_.size()) {
        syntax_error("unterminated tag <" + ev.name + ">");
      }
      const char c = text_[pos_];
      if (c == '>') {
        ++pos_;
        stack_.push_back(ev.name);
        return;
      }
      if (c == '/') {
        ++pos_;
        if (pos_ >= text_.size() || text_[pos_] != '>') {
          syntax_error("malformed self-closing tag");
        }
        ++pos_;
        ev.self_closing = true;
        // Keep the stack balanced for offset reporting, then drop the
        // frame on the next call so callers see a consistent open event.
        stack_.push_back(ev.name);
        pending_pop_ = true;
        return;
      }
      XmlAttribute attr;
      attr.name = parse_name();
      skip_spaces();
      if (pos_ >= text_.size() || text_[pos_] != '=') {
        syntax_error("attribute " + attr.name + " missing value");
      }
      ++pos_;
      skip_spaces();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        syntax_error("attribute " + attr.name + " missing quoted value");
      }
      const char quote = text_[pos_];
      ++pos_;
      const size_t vstart = pos_;
      while (pos_ < text_.size() && text_[pos_] != quote) {
        if (text_[pos_] == '<') {
          syntax_error("raw '<' in attribute value");
        }
        ++pos_;
      }
      if (pos_ >= text_.size()) {
        syntax_error("unterminated attribute value");
      }
      attr.value = decode_entities(text_.substr(vstart, pos_ - vstart));
      ++pos_;  // closing quote
      ev.attrs.push_back(std::move(attr));
    }
  }

  std::string decode_entities(std::string_view raw) const {
    if (raw.find('&') == std::string_view::npos) {
      return std::string(raw);
    }
    std::string out;
    out.reserve(raw.size());
    for (size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        ++i;
        continue;
      }
      const size_t semi = raw.find(';', i + 1);
      if (semi == std::string_view::npos) {
        syntax_error("unterminated entity");
      }
      const std::string_view body = raw.substr(i + 1, semi - i - 1);
      if (body == "amp") {
        out.push_back('&');
      } else if (body == "lt") {
        out.push_back('<');
      } else if (body == "gt") {
        out.push_back('>');
      } else if (body == "quot") {
        out.push_back('"');
      } else if (body == "apos") {
        out.push_back('\'');
      } else if (!body.empty() && body[0] == '#') {
        out += decode_charref(body.substr(1));
      } else {
        syntax_error("unknown entity &" + std::string(body) + ";");
      }
      i = semi + 1;
    }
    return out;
  }

  std::string decode_charref(std::string_view digits) const {
    uint32_t code = 0;
    bool any = false;
    if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
      for (char c : digits.substr(1)) {
        int v;
        if (c >= '0' && c <= '9') {
          v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
          v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
          v = c - 'A' + 10;
        } else {
          syntax_error("bad character reference");
        }
        code = code * 16 + static_cast<uint32_t>(v);
        any = true;
      }
    } else {
      for (char c : digits) {
        if (c < '0' || c > '9') {
          syntax_error("bad character reference");
        }
        code = code * 10 + static_cast<uint32_t>(c - '0');
        any = true;
      }
    }
    if (!any || code == 0 || code > 0x10FFFF) {
      syntax_error("bad character reference");
    }
    // UTF-8 encode.
    std::string out;
    if (code < 0x80) {
      out.push_back(static_cast<char>(code));
    } else if (code < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (code >> 6)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else if (code < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (code >> 12)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (code >> 18)));
      out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
    }
    return out;
  }

  std::string_view text_;
  size_t pos_ = 0;
  std::vector<std::string> stack_;
  bool pending_pop_ = false;
};

}  // namespace neurohex::osm
