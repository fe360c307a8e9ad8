#include <doctest.h>

#include "xlcite/text.hpp"

using namespace xlcite;

TEST_CASE("utf8 decode round trip") {
    const std::string samples[] = {
        "plain ascii", "Üben ärgert ß", "Современное модельное описание",
        "記憶付き可逆論理素子", "한국어 제목", "µ¶·", "𝒜 math letters 𠀀",
    };
    for (const auto& s : samples) {
        std::string rebuilt;
        for (char32_t cp : text::decode(s)) text::encode_utf8(cp, rebuilt);
        CHECK(rebuilt == s);
    }
}

TEST_CASE("letter scripts") {
    CHECK(text::letter_script(U'a') == text::Script::latin);
    CHECK(text::letter_script(U'Я') == text::Script::cyrillic);
    CHECK(text::letter_script(U'の') == text::Script::kana);
    CHECK(text::letter_script(U'漢') == text::Script::han);
    CHECK(text::letter_script(U'한') == text::Script::hangul);
    CHECK(text::letter_script(U'Ω') == text::Script::greek);
    CHECK(text::letter_script(U'א') == text::Script::hebrew);
    CHECK(text::letter_script(U'ب') == text::Script::arabic);
    CHECK(text::letter_script(U'ა') == text::Script::other);   // Georgian
    CHECK(text::letter_script(U'0') == text::Script::none);
    CHECK(text::letter_script(U'(') == text::Script::none);
    CHECK(text::letter_script(U'×') == text::Script::none);
    CHECK(text::letter_script(U'。') == text::Script::none);
}

TEST_CASE("fold strips diacritics and case") {
    CHECK(text::fold("José GARCÍA") == "jose garcia");
    CHECK(text::fold("Œuvre Française") == "oeuvre francaise");
    CHECK(text::fold("Größe") == "grosse");
    CHECK(text::fold("Straße") == "strasse");
    CHECK(text::fold("Łukasz Žižek") == "lukasz zizek");
    CHECK(text::fold("Nguyễn") == "nguyen");
}

TEST_CASE("fold cyrillic and greek lowercase") {
    CHECK(text::fold("Москва") == "москва");
    CHECK(text::fold("ΑΘΗΝΑ") == "αθηνα");
    CHECK(text::fold("ΟΔΥΣΣΕΥΣ") == text::fold("οδυσσευς"));
    CHECK(text::fold("σοφός") == text::fold("σοφόσ"));
}

TEST_CASE("normalize_title separates on punctuation, keeps digits") {
    CHECK(text::normalize_title("Foundations of Algebraic Geometry") ==
          "foundations of algebraic geometry");
    CHECK(text::normalize_title("  FOUNDATIONS   of algebraic GEOMETRY!! ") ==
          "foundations of algebraic geometry");
    CHECK(text::normalize_title("Sobolev spaces: theory") == "sobolev spaces theory");
    CHECK(text::normalize_title("spaces:theory") == "spaces theory");
    CHECK(text::normalize_title("results from 2001") == "results from 2001");
    CHECK(text::normalize_title("代名詞が指すもの,その指し方") ==
          text::normalize_title("代名詞が指すもの ,その指し方"));
}

TEST_CASE("normalize_name reduces to surname plus initial") {
    CHECK(text::normalize_name("A. Ivanov") == "ivanov, a");
    CHECK(text::normalize_name("Ivanov, Aleksei") == "ivanov, a");
    CHECK(text::normalize_name("ivanov,aleksei") == "ivanov, a");
    CHECK(text::normalize_name("José García") == "garcia, j");
    CHECK(text::normalize_name("Jose Garcia") == "garcia, j");
    CHECK(text::normalize_name("Ivanov") == "ivanov,");
    CHECK(text::normalize_name("A. B. Ivanov") == "ivanov, a");
    CHECK(text::normalize_name("  van der Berg ,  Jan ") == "van der berg, j");
}
