#include "msd/stemmer.hpp"

#include <array>
#include <cstring>

namespace msd {

namespace {

// Working buffer for one word. k is the index of the last live letter, j the
// end of the candidate stem during suffix checks.
struct Word {
    std::string b;
    int k = -1;
    int j = -1;

    bool is_consonant(int i) const {
        switch (b[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // Number of VC sequences in [C](VC)^m[V] over b[0..j].
    int measure() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j) return n;
            if (!is_consonant(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j) return n;
                if (is_consonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j) return n;
                if (!is_consonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool has_vowel() const {
        for (int i = 0; i <= j; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool double_consonant(int i) const {
        if (i < 1) return false;
        if (b[i] != b[i - 1]) return false;
        return is_consonant(i);
    }

    // consonant-vowel-consonant ending at i, final consonant not w, x or y;
    // the *o condition.
    bool cvc(int i) const {
        if (i < 2 || !is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2))
            return false;
        const char c = b[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        if (len > k + 1) return false;
        if (std::memcmp(b.data() + k - len + 1, s, len) != 0) return false;
        j = k - len;
        return true;
    }

    void set_to(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        b.replace(j + 1, b.size() - (j + 1), s);
        k = j + len;
    }

    void replace_if_measure(const char* s) {
        if (measure() > 0) set_to(s);
    }
};

// Plurals and -ed/-ing.
void step1ab(Word& w) {
    if (w.b[w.k] == 's') {
        if (w.ends("sses"))
            w.k -= 2;
        else if (w.ends("ies"))
            w.set_to("i");
        else if (w.b[w.k - 1] != 's')
            --w.k;
    }
    if (w.ends("eed")) {
        if (w.measure() > 0) --w.k;
    } else if ((w.ends("ed") || w.ends("ing")) && w.has_vowel()) {
        w.k = w.j;
        if (w.ends("at"))
            w.set_to("ate");
        else if (w.ends("bl"))
            w.set_to("ble");
        else if (w.ends("iz"))
            w.set_to("ize");
        else if (w.double_consonant(w.k)) {
            const char c = w.b[w.k];
            if (c != 'l' && c != 's' && c != 'z') --w.k;
        } else {
            w.j = w.k;
            if (w.measure() == 1 && w.cvc(w.k)) w.set_to("e");
        }
    }
}

// y -> i when the stem has another vowel.
void step1c(Word& w) {
    if (w.ends("y") && w.has_vowel()) w.b[w.k] = 'i';
}

// Double to single suffixes, e.g. -ization -> -ize.
void step2(Word& w) {
    switch (w.b[w.k - 1]) {
        case 'a':
            if (w.ends("ational")) { w.replace_if_measure("ate"); break; }
            if (w.ends("tional")) { w.replace_if_measure("tion"); break; }
            break;
        case 'c':
            if (w.ends("enci")) { w.replace_if_measure("ence"); break; }
            if (w.ends("anci")) { w.replace_if_measure("ance"); break; }
            break;
        case 'e':
            if (w.ends("izer")) { w.replace_if_measure("ize"); break; }
            break;
        case 'l':
            if (w.ends("bli")) { w.replace_if_measure("ble"); break; }
            if (w.ends("alli")) { w.replace_if_measure("al"); break; }
            if (w.ends("entli")) { w.replace_if_measure("ent"); break; }
            if (w.ends("eli")) { w.replace_if_measure("e"); break; }
            if (w.ends("ousli")) { w.replace_if_measure("ous"); break; }
            break;
        case 'o':
            if (w.ends("ization")) { w.replace_if_measure("ize"); break; }
            if (w.ends("ation")) { w.replace_if_measure("ate"); break; }
            if (w.ends("ator")) { w.replace_if_measure("ate"); break; }
            break;
        case 's':
            if (w.ends("alism")) { w.replace_if_measure("al"); break; }
            if (w.ends("iveness")) { w.replace_if_measure("ive"); break; }
            if (w.ends("fulness")) { w.replace_if_measure("ful"); break; }
            if (w.ends("ousness")) { w.replace_if_measure("ous"); break; }
            break;
        case 't':
            if (w.ends("aliti")) { w.replace_if_measure("al"); break; }
            if (w.ends("iviti")) { w.replace_if_measure("ive"); break; }
            if (w.ends("biliti")) { w.replace_if_measure("ble"); break; }
            break;
        case 'g':
            if (w.ends("logi")) { w.replace_if_measure("log"); break; }
            break;
        default:
            break;
    }
}

// -icate, -ful, -ness and friends.
void step3(Word& w) {
    switch (w.b[w.k]) {
        case 'e':
            if (w.ends("icate")) { w.replace_if_measure("ic"); break; }
            if (w.ends("ative")) { w.replace_if_measure(""); break; }
            if (w.ends("alize")) { w.replace_if_measure("al"); break; }
            break;
        case 'i':
            if (w.ends("iciti")) { w.replace_if_measure("ic"); break; }
            break;
        case 'l':
            if (w.ends("ical")) { w.replace_if_measure("ic"); break; }
            if (w.ends("ful")) { w.replace_if_measure(""); break; }
            break;
        case 's':
            if (w.ends("ness")) { w.replace_if_measure(""); break; }
            break;
        default:
            break;
    }
}

// Drop remaining standard suffixes when the stem measure exceeds 1.
void step4(Word& w) {
    switch (w.b[w.k - 1]) {
        case 'a':
            if (w.ends("al")) break;
            return;
        case 'c':
            if (w.ends("ance")) break;
            if (w.ends("ence")) break;
            return;
        case 'e':
            if (w.ends("er")) break;
            return;
        case 'i':
            if (w.ends("ic")) break;
            return;
        case 'l':
            if (w.ends("able")) break;
            if (w.ends("ible")) break;
            return;
        case 'n':
            if (w.ends("ant")) break;
            if (w.ends("ement")) break;
            if (w.ends("ment")) break;
            if (w.ends("ent")) break;
            return;
        case 'o':
            if (w.ends("ion") && w.j >= 0 && (w.b[w.j] == 's' || w.b[w.j] == 't')) break;
            if (w.ends("ou")) break;
            return;
        case 's':
            if (w.ends("ism")) break;
            return;
        case 't':
            if (w.ends("ate")) break;
            if (w.ends("iti")) break;
            return;
        case 'u':
            if (w.ends("ous")) break;
            return;
        case 'v':
            if (w.ends("ive")) break;
            return;
        case 'z':
            if (w.ends("ize")) break;
            return;
        default:
            return;
    }
    if (w.measure() > 1) w.k = w.j;
}

// Final -e and -ll tidy-up.
void step5(Word& w) {
    w.j = w.k;
    if (w.b[w.k] == 'e') {
        w.j = w.k - 1;
        const int m = w.measure();
        if (m > 1 || (m == 1 && !w.cvc(w.k - 1))) --w.k;
    }
    w.j = w.k;
    if (w.b[w.k] == 'l' && w.double_consonant(w.k) && w.measure() > 1) --w.k;
}

} // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    Word w;
    w.b.assign(word);
    w.k = static_cast<int>(w.b.size()) - 1;

    step1ab(w);
    if (w.k > 0) step1c(w);
    if (w.k > 0) step2(w);
    if (w.k > 0) step3(w);
    if (w.k > 0) step4(w);
    if (w.k > 0) step5(w);

    w.b.resize(static_cast<size_t>(w.k) + 1);
    return w.b;
}

} // namespace msd
