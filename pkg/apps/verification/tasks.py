from celery import shared_task


@shared_task(name="verification.verify_trial")
def verify_trial_task(seed, index, lemma_samples=None):
    """Одне випробування набору: множина і x0 виводяться з (seed, index)."""
    from .suite import draw_trial, verify_point

    E, x0 = draw_trial(int(seed), int(index))
    report = verify_point(E, x0, lemma_samples)
    report["index"] = int(index)
    return report
