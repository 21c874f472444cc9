"""Independent from-definition oracles used to cross-check the library.

Everything here is deliberately slow, loop-based pure Python with no
shared code with the implementations under test.
"""


def oracle_hamming(truth, pred):
    n = len(truth)
    k = len(truth[0])
    mism = 0
    for i in range(n):
        for j in range(k):
            if truth[i][j] != pred[i][j]:
                mism += 1
    return mism / (n * k)


def oracle_jaccard(truth, pred):
    total = 0.0
    for t_row, p_row in zip(truth, pred):
        t_set = {j for j, v in enumerate(t_row) if v}
        p_set = {j for j, v in enumerate(p_row) if v}
        union = t_set | p_set
        total += 1.0 if not union else len(t_set & p_set) / len(union)
    return total / len(truth)


def oracle_lrap(truth, scores):
    total = 0.0
    for t_row, s_row in zip(truth, scores):
        true_set = [j for j, v in enumerate(t_row) if v]
        if not true_set:
            total += 1.0
            continue
        sample = 0.0
        for j in true_set:
            ge_all = sum(1 for k in range(len(s_row)) if s_row[k] >= s_row[j])
            ge_true = sum(1 for k in true_set if s_row[k] >= s_row[j])
            sample += ge_true / ge_all
        total += sample / len(true_set)
    return total / len(truth)


def _confusion(truth, pred, label):
    tp = fp = fn = 0
    for t_row, p_row in zip(truth, pred):
        if t_row[label] and p_row[label]:
            tp += 1
        elif p_row[label]:
            fp += 1
        elif t_row[label]:
            fn += 1
    return tp, fp, fn


def oracle_f1_micro(truth, pred):
    tp = fp = fn = 0
    for j in range(len(truth[0])):
        a, b, c = _confusion(truth, pred, j)
        tp, fp, fn = tp + a, fp + b, fn + c
    denom = 2 * tp + fp + fn
    return 2 * tp / denom if denom else 0.0


def oracle_f1_macro(truth, pred):
    total = 0.0
    k = len(truth[0])
    for j in range(k):
        tp, fp, fn = _confusion(truth, pred, j)
        denom = 2 * tp + fp + fn
        total += 2 * tp / denom if denom else 0.0
    return total / k


def oracle_ngrams(token_lists, n):
    counts = {}
    for tokens in token_lists:
        for i in range(len(tokens)):
            window = tuple(tokens[i:i + n])
            if len(window) == n:
                counts[window] = counts.get(window, 0) + 1
    return counts


def oracle_mean(values):
    total = 0.0
    for v in values:
        total += v
    return total / len(values)
